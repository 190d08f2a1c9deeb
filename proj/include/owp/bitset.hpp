#ifndef OWP_BITSET_HPP
#define OWP_BITSET_HPP

#include <cstdint>
#include <vector>

namespace owp {

// Fixed-universe bitset; used for edge sets (indexed by pair rank) and
// vertex sets alike.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(int universe)
        : size_(universe), words_((universe + 63) / 64, 0) {}

    int universe() const { return size_; }

    void set(int i) { words_[i >> 6] |= word(i); }
    void reset(int i) { words_[i >> 6] &= ~word(i); }
    bool test(int i) const { return (words_[i >> 6] & word(i)) != 0; }

    void clear() { for (auto& w : words_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    bool intersects(const DynBitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool contains(const DynBitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    DynBitset& operator|=(const DynBitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    DynBitset& operator&=(const DynBitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    DynBitset& operator-=(const DynBitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend DynBitset operator&(DynBitset a, const DynBitset& b) { a &= b; return a; }
    friend DynBitset operator|(DynBitset a, const DynBitset& b) { a |= b; return a; }

    bool operator==(const DynBitset& o) const { return words_ == o.words_; }
    bool operator!=(const DynBitset& o) const { return !(*this == o); }

    // least set index, or -1
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + __builtin_ctzll(words_[i]));
        return -1;
    }

    // next set index strictly after i, or -1
    int next(int i) const {
        ++i;
        if (i >= size_) return -1;
        std::size_t w = std::size_t(i) >> 6;
        std::uint64_t cur = words_[w] & (~0ull << (i & 63));
        while (true) {
            if (cur) return int(w * 64 + __builtin_ctzll(cur));
            if (++w >= words_.size()) return -1;
            cur = words_[w];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (int i = first(); i >= 0; i = next(i)) f(i);
    }

private:
    static std::uint64_t word(int i) { return 1ull << (i & 63); }
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace owp

#endif
