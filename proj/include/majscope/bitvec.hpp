#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majscope/io.hpp"

namespace majscope {

/* Plain bitmap with a two-level rank directory (512-bit superblocks over
   64-bit words). All public positions are 1-based; rank(i) counts 1s in
   [1..i] with rank(0) = 0. select/select0 binary-search the directory. */
class PlainBitvec {
public:
    class Builder {
    public:
        explicit Builder(uint64_t size) : m_size(size), m_words((size + 63) / 64, 0) {}

        void set(uint64_t i) {  // 1-based
            uint64_t b = i - 1;
            m_words[b >> 6] |= 1ull << (b & 63);
        }

        PlainBitvec build() &&;

    private:
        uint64_t m_size;
        std::vector<uint64_t> m_words;
        friend class PlainBitvec;
    };

    PlainBitvec() = default;

    static PlainBitvec from_bits(std::span<const uint8_t> bits);

    uint64_t size() const { return m_size; }
    uint64_t ones() const { return m_ones; }
    uint64_t zeros() const { return m_size - m_ones; }

    bool get(uint64_t i) const {  // 1-based
        uint64_t b = i - 1;
        return (m_words[b >> 6] >> (b & 63)) & 1;
    }

    uint64_t rank(uint64_t i) const;     // 0 <= i <= size
    uint64_t rank0(uint64_t i) const { return i - rank(i); }
    uint64_t select(uint64_t j) const;   // 1 <= j <= ones
    uint64_t select0(uint64_t j) const;  // 1 <= j <= zeros

    void serialize(ByteWriter& w) const;
    static PlainBitvec deserialize(ByteReader& r);

    /* serialized payload bits (directories are rebuilt on load) */
    uint64_t bit_size() const { return m_words.size() * 64; }

private:
    void build_directories();

    uint64_t m_size = 0;
    uint64_t m_ones = 0;
    std::vector<uint64_t> m_words;
    std::vector<uint64_t> m_super;  // ones before each 8-word superblock
    std::vector<uint16_t> m_block;  // ones before each word, within its superblock
};

/* Elias-Fano compressed monotone set over universe [1,m]: the low
   b = max(1, ceil(lg(m/n))) bits of each position go to a packed array L,
   the high parts are unary-coded into H. select is O(1), rank binary-searches
   one increasing run of L, O(log(m/n)) comparisons. */
class SparseBitvec {
public:
    SparseBitvec() = default;

    /* positions must be strictly increasing, within [1, universe] */
    static SparseBitvec build(uint64_t universe, std::span<const uint64_t> positions);

    uint64_t universe() const { return m_universe; }
    uint64_t ones() const { return m_ones; }
    uint8_t low_width() const { return m_low_width; }

    uint64_t select(uint64_t j) const {  // 1 <= j <= ones
        return ((m_high.select(j) - j) << m_low_width) + m_low.get(j - 1);
    }

    uint64_t rank(uint64_t i) const;  // 0 <= i <= universe

    void serialize(ByteWriter& w) const;
    static SparseBitvec deserialize(ByteReader& r);

    uint64_t bit_size() const { return m_low.bit_size() + m_high.bit_size(); }

private:
    uint64_t m_universe = 0;
    uint64_t m_ones = 0;
    uint8_t m_low_width = 1;
    PackedInts m_low;
    PlainBitvec m_high;
};

}  // namespace majscope
