#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

namespace spreads {

// Dynamic bitset sized once; the unit of all adjacency/availability masks.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }
    size_t words() const { return w_.size(); }
    uint64_t* data() { return w_.data(); }
    const uint64_t* data() const { return w_.data(); }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void clear() { std::memset(w_.data(), 0, w_.size() * 8); }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += (size_t)__builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }

    BitRow& operator&=(const BitRow& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitRow& operator|=(const BitRow& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this &= ~o
    BitRow& and_not(const BitRow& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    bool operator==(const BitRow& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

    // Iterate set bits: f(index). Return false from f to stop early.
    template <class F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                size_t b = (size_t)__builtin_ctzll(w);
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }
private:
    size_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

// Row-major packed bit matrix; rows padded to whole 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t words_per_row() const { return wpr_; }
    uint64_t* row(size_t r) { return w_.data() + r * wpr_; }
    const uint64_t* row(size_t r) const { return w_.data() + r * wpr_; }

    bool get(size_t r, size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(size_t r, size_t c) { row(r)[c >> 6] |= uint64_t(1) << (c & 63); }
    void reset(size_t r, size_t c) { row(r)[c >> 6] &= ~(uint64_t(1) << (c & 63)); }

    size_t row_count(size_t r) const {
        size_t c = 0;
        const uint64_t* p = row(r);
        for (size_t i = 0; i < wpr_; ++i) c += (size_t)__builtin_popcountll(p[i]);
        return c;
    }
    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += (size_t)__builtin_popcountll(w);
        return c;
    }
    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

private:
    size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> w_;
};

inline size_t and_popcount(const uint64_t* a, const uint64_t* b, size_t words) {
    size_t c = 0;
    for (size_t i = 0; i < words; ++i) c += (size_t)__builtin_popcountll(a[i] & b[i]);
    return c;
}

}  // namespace spreads
