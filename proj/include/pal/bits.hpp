#pragma once
// Small dynamic bitset used for adjacency rows and relation rows.
#include <cstdint>
#include <vector>
#include <cassert>
#include <bit>

namespace pal {

class Bits {
public:
    Bits() : n_(0) {}
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { for (auto& x : w_) x = 0; }

    bool any() const {
        for (auto x : w_) if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    // index of lowest set bit, or -1
    int first() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k * 64 + std::countr_zero(w_[k]));
        return -1;
    }
    // next set bit strictly after i, or -1
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t k = size_t(i) >> 6;
        uint64_t cur = w_[k] & (~uint64_t{0} << (i & 63));
        while (true) {
            if (cur) return int(k * 64 + std::countr_zero(cur));
            if (++k >= w_.size()) return -1;
            cur = w_[k];
        }
    }

    Bits& operator&=(const Bits& o) {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    bool intersects(const Bits& o) const {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    int n_;
    std::vector<uint64_t> w_;
};

} // namespace pal
