#pragma once

#include <cstdint>
#include <vector>

namespace spreads {

// Field element in exponential index form: 0 encodes the zero element and
// j > 0 encodes x^(j-1), where x is the fixed primitive element of the field
// (for prime fields, the smallest primitive root). This is also the digit
// convention of the spread-set text format, so no conversion happens on I/O.
using Fe = uint8_t;

// Arithmetic tables for GF(q), q = p^e <= 9.
class Field {
public:
    // Shared immutable instance with the standard primitive polynomial.
    static const Field& get(int p, int e);

    // Builds a field, optionally overriding the defining polynomial
    // (coefficients c0..ce over GF(p), ce = 1). Throws std::invalid_argument
    // for unsupported (p, e) or a non-primitive polynomial.
    static Field make(int p, int e, const std::vector<int>* poly_override = nullptr);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& prim_poly() const { return poly_; }

    Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
    Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
    Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
    Fe neg(Fe a) const { return neg_[a]; }
    Fe inv(Fe a) const;  // throws std::domain_error on a == 0
    // a^(p^k), 0 <= k < e
    Fe frob(Fe a, int k) const { return frob_[k * q_ + a]; }

    bool is_zero(Fe a) const { return a == 0; }
    static constexpr Fe zero() { return 0; }
    static constexpr Fe one() { return 1; }
    // x^k as an element (k >= 0)
    Fe from_exp(long k) const { return Fe(1 + (k % (q_ - 1))); }

    char encode(Fe a) const;      // '0'..digit(q-1)
    Fe decode(char c) const;      // throws std::invalid_argument if out of range

    // Coefficients of the element over GF(p), little-endian, length e.
    std::vector<int> coeffs(Fe a) const;
    Fe from_coeffs(const std::vector<int>& c) const;

private:
    Field() = default;
    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<int> poly_;
    std::vector<Fe> add_, mul_, frob_;
    std::vector<Fe> neg_, inv_;
    std::vector<std::vector<int>> coeff_;  // idx -> coefficient vector
};

}  // namespace spreads
