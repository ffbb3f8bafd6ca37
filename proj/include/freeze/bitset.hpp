#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace freeze::detail {

// Fixed-width bitset sized at runtime. Used for adjacency rows and
// candidate-set arithmetic in the search engine.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size_bits() const { return nbits_; }

    void set(int i) { words_[i >> 6] |= word_bit(i); }
    void reset(int i) { words_[i >> 6] &= ~word_bit(i); }
    bool test(int i) const { return (words_[i >> 6] & word_bit(i)) != 0; }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    // a &= b; returns true when any bit was dropped
    bool intersect_with(const Bitset& o) {
        bool changed = false;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t nw = words_[k] & o.words_[k];
            if (nw != words_[k]) changed = true;
            words_[k] = nw;
        }
        return changed;
    }

    bool subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    int find_first() const { return find_next(-1); }

    // next set bit strictly after `prev`, or -1
    int find_next(int prev) const {
        int i = prev + 1;
        if (i >= nbits_) return -1;
        std::size_t k = static_cast<std::size_t>(i) >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return static_cast<int>(k * 64 + std::countr_zero(w));
            if (++k == words_.size()) return -1;
            w = words_[k];
        }
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    static std::uint64_t word_bit(int i) { return std::uint64_t{1} << (i & 63); }
    void trim() {
        if (nbits_ & 63) words_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace freeze::detail
