#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spreads {

// Unsigned arbitrary-precision integer. Group orders and the counting-identity
// sums overflow 64 bits for the larger fields, and everything here must be exact.
// Only the handful of operations the pipeline needs are provided.
class BigUint {
public:
    BigUint() = default;  // zero
    BigUint(uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    uint64_t to_u64() const;  // throws std::overflow_error if too large

    std::string to_string() const;  // decimal

    BigUint& operator+=(const BigUint& o);
    BigUint& operator*=(uint64_t m);
    BigUint operator*(const BigUint& o) const;

    // Quotient and remainder; divisor must be nonzero.
    static void divmod(const BigUint& num, const BigUint& den, BigUint& q, BigUint& r);
    // Division that must be exact; throws std::domain_error on nonzero remainder.
    BigUint div_exact(const BigUint& den) const;

    int compare(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigUint& o) const { return !(*this == o); }
    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
    bool operator>(const BigUint& o) const { return compare(o) > 0; }
    bool operator>=(const BigUint& o) const { return compare(o) >= 0; }

private:
    void trim();
    // little-endian 64-bit limbs; empty means zero
    std::vector<uint64_t> limbs_;
};

inline BigUint operator+(BigUint a, const BigUint& b) {
    a += b;
    return a;
}
inline BigUint operator*(BigUint a, uint64_t m) {
    a *= m;
    return a;
}

}  // namespace spreads
