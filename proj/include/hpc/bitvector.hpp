#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace hpc {

/// Fixed-size packed bit array. Bit i lives in word i/64 at position i%64;
/// byte i/8 at position i%8 (LSB-first), which is exactly the on-disk
/// binary layout, so serialization is a straight byte copy.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint64_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    uint64_t size() const { return size_; }

    bool get(uint64_t i) const {
        assert(i < size_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set(uint64_t i, bool v) {
        assert(i < size_);
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask;
        else   words_[i >> 6] &= ~mask;
    }

    uint64_t count() const {
        uint64_t c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    size_t word_count() const { return words_.size(); }
    uint64_t word(size_t w) const { return words_[w]; }

    /// Assigns a whole word; padding bits past size() are forced to zero.
    void set_word(size_t w, uint64_t v) {
        assert(w < words_.size());
        if (w + 1 == words_.size() && (size_ & 63) != 0)
            v &= (uint64_t{1} << (size_ & 63)) - 1;
        words_[w] = v;
    }

    uint64_t byte_count() const { return (size_ + 7) / 8; }

    uint8_t byte(uint64_t b) const {
        return static_cast<uint8_t>(words_[b >> 3] >> (8 * (b & 7)));
    }

    void set_byte(uint64_t b, uint8_t v) {
        uint64_t shift = 8 * (b & 7);
        uint64_t w = words_[b >> 3] & ~(uint64_t{0xff} << shift);
        words_[b >> 3] = w | (static_cast<uint64_t>(v) << shift);
        if (b >> 3 == words_.size() - 1) set_word(b >> 3, words_[b >> 3]);
    }

    bool operator==(const BitVector&) const = default;

private:
    uint64_t size_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace hpc
