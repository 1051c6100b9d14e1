#pragma once

#include <cstdint>
#include <vector>

namespace spreads {

// Point of a permutation domain (line index). Degrees stay below 2^16 for
// every supported field (7462 lines at q = 9).
using pt = uint16_t;

// Permutation in image form with left action: g(x) = g[x].
class Perm {
public:
    Perm() = default;
    explicit Perm(size_t n) : im_(n) {
        for (size_t i = 0; i < n; ++i) im_[i] = (pt)i;
    }
    static Perm from_images(std::vector<pt> im) {
        Perm p;
        p.im_ = std::move(im);
        return p;
    }

    size_t degree() const { return im_.size(); }
    pt operator[](size_t x) const { return im_[x]; }
    pt& at(size_t x) { return im_[x]; }
    const std::vector<pt>& images() const { return im_; }

    bool is_identity() const {
        for (size_t i = 0; i < im_.size(); ++i)
            if (im_[i] != i) return false;
        return true;
    }

    Perm inverse() const {
        Perm r;
        r.im_.resize(im_.size());
        for (size_t i = 0; i < im_.size(); ++i) r.im_[im_[i]] = (pt)i;
        return r;
    }

    bool operator==(const Perm& o) const { return im_ == o.im_; }
    bool operator!=(const Perm& o) const { return im_ != o.im_; }
    bool operator<(const Perm& o) const { return im_ < o.im_; }

    // (a*b)(x) = a(b(x)): b applied first.
    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm r;
        r.im_.resize(a.im_.size());
        for (size_t i = 0; i < a.im_.size(); ++i) r.im_[i] = a.im_[b.im_[i]];
        return r;
    }
    static void mul_into(Perm& out, const Perm& a, const Perm& b) {
        out.im_.resize(a.im_.size());
        for (size_t i = 0; i < a.im_.size(); ++i) out.im_[i] = a.im_[b.im_[i]];
    }

    uint64_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (pt x : im_) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }

    // Smallest moved point, or degree() if identity.
    size_t first_moved() const {
        for (size_t i = 0; i < im_.size(); ++i)
            if (im_[i] != i) return i;
        return im_.size();
    }

private:
    std::vector<pt> im_;
};

// Sorted image of a sorted set.
std::vector<pt> apply_to_set(const Perm& g, const std::vector<pt>& s);

}  // namespace spreads
