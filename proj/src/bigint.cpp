#include "spreads/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace spreads {

using u128 = unsigned __int128;

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 1) throw std::overflow_error("BigUint does not fit in 64 bits");
    return limbs_.empty() ? 0 : limbs_[0];
}

BigUint& BigUint::operator+=(const BigUint& o) {
    size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        u128 s = (u128)limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0) + carry;
        limbs_[i] = (uint64_t)s;
        carry = (uint64_t)(s >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator*=(uint64_t m) {
    if (m == 0 || limbs_.empty()) {
        limbs_.clear();
        return *this;
    }
    uint64_t carry = 0;
    for (auto& l : limbs_) {
        u128 p = (u128)l * m + carry;
        l = (uint64_t)p;
        carry = (uint64_t)(p >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    BigUint r;
    if (limbs_.empty() || o.limbs_.empty()) return r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            u128 p = (u128)limbs_[i] * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = (uint64_t)p;
            carry = (uint64_t)(p >> 64);
        }
        r.limbs_[i + o.limbs_.size()] += carry;
    }
    r.trim();
    return r;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

// Schoolbook long division on 32-bit half-limbs; operand sizes here are tiny.
void BigUint::divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r) {
    if (den.is_zero()) throw std::domain_error("BigUint division by zero");
    q = BigUint();
    r = BigUint();
    if (num.compare(den) < 0) {
        r = num;
        return;
    }
    // Expand to base 2^32 digits, most significant first.
    auto digits32 = [](const BigUint& x) {
        std::vector<uint32_t> d;
        for (size_t i = x.limbs_.size(); i-- > 0;) {
            d.push_back((uint32_t)(x.limbs_[i] >> 32));
            d.push_back((uint32_t)x.limbs_[i]);
        }
        while (d.size() > 1 && d.front() == 0) d.erase(d.begin());
        return d;
    };
    std::vector<uint32_t> n = digits32(num);
    std::vector<uint32_t> qd(n.size(), 0);
    BigUint rem;
    for (size_t i = 0; i < n.size(); ++i) {
        // rem = rem * 2^32 + n[i]
        rem *= (uint64_t(1) << 32);
        rem += BigUint(n[i]);
        // binary search the digit: largest d with den*d <= rem
        uint64_t lo = 0, hi = 0xFFFFFFFFull;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) >> 1;
            BigUint t2 = den;
            t2 *= mid;
            if (t2.compare(rem) <= 0)
                lo = mid;
            else
                hi = mid - 1;
        }
        qd[i] = (uint32_t)lo;
        BigUint t3 = den;
        t3 *= lo;
        // rem -= t3 (rem >= t3)
        uint64_t borrow = 0;
        rem.limbs_.resize(std::max(rem.limbs_.size(), t3.limbs_.size()), 0);
        for (size_t k = 0; k < rem.limbs_.size(); ++k) {
            u128 cur = (u128)rem.limbs_[k];
            u128 sub = (k < t3.limbs_.size() ? (u128)t3.limbs_[k] : 0) + borrow;
            if (cur >= sub) {
                rem.limbs_[k] = (uint64_t)(cur - sub);
                borrow = 0;
            } else {
                rem.limbs_[k] = (uint64_t)(cur + ((u128)1 << 64) - sub);
                borrow = 1;
            }
        }
        rem.trim();
    }
    // pack quotient digits back into limbs
    q = BigUint();
    for (uint32_t d : qd) {
        q *= (uint64_t(1) << 32);
        q += BigUint(d);
    }
    q.trim();
    r = rem;
}

BigUint BigUint::div_exact(const BigUint& den) const {
    BigUint q, r;
    divmod(*this, den, q, r);
    if (!r.is_zero()) throw std::domain_error("BigUint::div_exact: nonzero remainder");
    return q;
}

std::string BigUint::to_string() const {
    if (limbs_.empty()) return "0";
    std::string out;
    BigUint cur = *this;
    BigUint ten9(1000000000ull);
    while (!cur.is_zero()) {
        BigUint q, r;
        divmod(cur, ten9, q, r);
        uint64_t chunk = r.is_zero() ? 0 : r.limbs_[0];
        std::string s = std::to_string(chunk);
        if (!q.is_zero())
            s = std::string(9 - s.size(), '0') + s;
        out = s + out;
        cur = q;
    }
    return out;
}

}  // namespace spreads
