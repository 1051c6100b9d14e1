#include "spreads/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace spreads {

namespace {

// Fixed defining polynomials, coefficients c0..ce over GF(p).
// GF(8) uses x^3+x+1; GF(4) x^2+x+1; GF(9) x^2+x+2 (the lexicographically
// smallest primitive quadratic over GF(3)). Prime fields use x - g with g the
// smallest primitive root, so the exponential encoding is uniform.
const std::map<std::pair<int, int>, std::vector<int>> kStandardPoly = {
    {{2, 1}, {1, 1}},        // x + 1, g = 1
    {{3, 1}, {1, 1}},        // x - 2 = x + 1, g = 2
    {{5, 1}, {3, 1}},        // x - 2 = x + 3, g = 2
    {{7, 1}, {4, 1}},        // x - 3 = x + 4, g = 3
    {{2, 2}, {1, 1, 1}},     // x^2 + x + 1
    {{2, 3}, {1, 1, 0, 1}},  // x^3 + x + 1
    {{3, 2}, {2, 1, 1}},     // x^2 + x + 2
};

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int ipow(int b, int e) {
    int r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

Field Field::make(int p, int e, const std::vector<int>* poly_override) {
    if (!is_prime(p) || e < 1 || ipow(p, e) > 9)
        throw std::invalid_argument("unsupported field GF(" + std::to_string(p) + "^" +
                                    std::to_string(e) + ")");
    Field f;
    f.p_ = p;
    f.e_ = e;
    f.q_ = ipow(p, e);
    if (poly_override) {
        f.poly_ = *poly_override;
        if ((int)f.poly_.size() != e + 1 || f.poly_.back() != 1)
            throw std::invalid_argument("defining polynomial must be monic of degree e");
        for (int c : f.poly_)
            if (c < 0 || c >= p) throw std::invalid_argument("polynomial coefficient out of range");
    } else {
        auto it = kStandardPoly.find({p, e});
        if (it == kStandardPoly.end()) throw std::invalid_argument("no standard polynomial");
        f.poly_ = it->second;
    }

    const int q = f.q_;
    // Powers of x in the quotient ring GF(p)[x]/(poly), as coefficient vectors.
    // x^e reduces to -(c0 + c1 x + ... + c_{e-1} x^{e-1}).
    std::vector<std::vector<int>> pow_coeff;  // pow_coeff[k] = coeffs of x^k
    // For e == 1 the residue of x is the primitive root g = -c0.
    std::vector<int> cur(e, 0);
    if (e == 1) cur[0] = (p - f.poly_[0]) % p;
    std::vector<int> one(e, 0);
    one[0] = 1;
    pow_coeff.push_back(one);
    for (int k = 1; k < q - 1; ++k) {
        // multiply previous by x
        const std::vector<int>& prev = pow_coeff.back();
        std::vector<int> nxt(e, 0);
        if (e == 1) {
            nxt[0] = prev[0] * cur[0] % p;
        } else {
            int top = prev[e - 1];
            for (int i = e - 1; i >= 1; --i) nxt[i] = prev[i - 1];
            nxt[0] = 0;
            if (top) {
                for (int i = 0; i < e; ++i) {
                    int sub = top * f.poly_[i] % p;
                    nxt[i] = ((nxt[i] - sub) % p + p) % p;
                }
            }
        }
        pow_coeff.push_back(nxt);
    }

    // Primitivity: the q-1 powers must be distinct and the next power must be 1.
    std::map<std::vector<int>, int> seen;
    for (int k = 0; k < q - 1; ++k) {
        bool zero = true;
        for (int c : pow_coeff[k])
            if (c) zero = false;
        if (zero || seen.count(pow_coeff[k]))
            throw std::invalid_argument("polynomial is not primitive");
        seen[pow_coeff[k]] = k;
    }
    {
        // x^(q-1) must equal 1
        const std::vector<int>& prev = pow_coeff.back();
        std::vector<int> nxt(e, 0);
        if (e == 1) {
            nxt[0] = prev[0] * cur[0] % p;
        } else {
            int top = prev[e - 1];
            for (int i = e - 1; i >= 1; --i) nxt[i] = prev[i - 1];
            nxt[0] = 0;
            if (top)
                for (int i = 0; i < e; ++i)
                    nxt[i] = ((nxt[i] - top * f.poly_[i] % p) % p + p) % p;
        }
        if (nxt != one) throw std::invalid_argument("polynomial is not primitive");
    }

    // idx <-> coefficient maps. idx 0 is zero, idx j>0 is x^(j-1).
    f.coeff_.resize(q);
    f.coeff_[0] = std::vector<int>(e, 0);
    std::map<std::vector<int>, Fe> to_idx;
    to_idx[f.coeff_[0]] = 0;
    for (int j = 1; j < q; ++j) {
        f.coeff_[j] = pow_coeff[j - 1];
        to_idx[f.coeff_[j]] = (Fe)j;
    }

    f.add_.assign(q * q, 0);
    f.mul_.assign(q * q, 0);
    f.neg_.assign(q, 0);
    f.inv_.assign(q, 0);
    f.frob_.assign(e * q, 0);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            std::vector<int> s(e);
            for (int i = 0; i < e; ++i) s[i] = (f.coeff_[a][i] + f.coeff_[b][i]) % p;
            f.add_[a * q + b] = to_idx.at(s);
            f.mul_[a * q + b] =
                (a == 0 || b == 0) ? 0 : (Fe)(1 + ((a - 1) + (b - 1)) % (q - 1));
        }
        std::vector<int> m(e);
        for (int i = 0; i < e; ++i) m[i] = (p - f.coeff_[a][i]) % p;
        f.neg_[a] = to_idx.at(m);
        if (a > 0) f.inv_[a] = (Fe)(1 + ((q - 1) - (a - 1)) % (q - 1));
    }
    for (int k = 0; k < e; ++k) {
        long pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        for (int a = 0; a < q; ++a)
            f.frob_[k * q + a] = (a == 0) ? 0 : (Fe)(1 + (long(a - 1) * pk) % (q - 1));
    }
    return f;
}

const Field& Field::get(int p, int e) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make(p, e)).first;
    return it->second;
}

Fe Field::inv(Fe a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

char Field::encode(Fe a) const { return char('0' + a); }

Fe Field::decode(char c) const {
    int v = c - '0';
    if (v < 0 || v >= q_)
        throw std::invalid_argument(std::string("character '") + c + "' out of range for GF(" +
                                    std::to_string(q_) + ")");
    return (Fe)v;
}

std::vector<int> Field::coeffs(Fe a) const { return coeff_[a]; }

Fe Field::from_coeffs(const std::vector<int>& c) const {
    for (Fe a = 0; a < q_; ++a)
        if (coeff_[a] == c) return a;
    throw std::invalid_argument("coefficient vector not in field");
}

}  // namespace spreads
