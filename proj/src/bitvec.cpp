#include "majscope/bitvec.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace majscope {

namespace {

constexpr char kPlainMagic[4] = {'M', 'J', 'P', 'B'};
constexpr char kSparseMagic[4] = {'M', 'J', 'S', 'B'};
constexpr uint16_t kVersion = 1;

/* position (1-based) of the r-th set bit of w, 1 <= r <= popcount(w) */
inline unsigned select_in_word(uint64_t w, unsigned r) {
    for (unsigned byte = 0; byte < 8; ++byte) {
        unsigned c = unsigned(std::popcount(uint8_t(w >> (byte * 8))));
        if (c >= r) {
            uint8_t v = uint8_t(w >> (byte * 8));
            for (unsigned bit = 0; bit < 8; ++bit)
                if ((v >> bit) & 1) {
                    if (--r == 0) return byte * 8 + bit + 1;
                }
        }
        r -= c;
    }
    assert(false && "select_in_word out of range");
    return 0;
}

}  // namespace

PlainBitvec PlainBitvec::Builder::build() && {
    PlainBitvec v;
    v.m_size = m_size;
    v.m_words = std::move(m_words);
    v.build_directories();
    return v;
}

PlainBitvec PlainBitvec::from_bits(std::span<const uint8_t> bits) {
    Builder b(bits.size());
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) b.set(i + 1);
    return std::move(b).build();
}

void PlainBitvec::build_directories() {
    size_t nwords = m_words.size();
    m_super.assign((nwords + 7) / 8 + 1, 0);
    m_block.assign(nwords, 0);
    uint64_t total = 0, within = 0;
    for (size_t w = 0; w < nwords; ++w) {
        if (w % 8 == 0) {
            m_super[w / 8] = total;
            within = 0;
        }
        m_block[w] = uint16_t(within);
        uint64_t c = std::popcount(m_words[w]);
        within += c;
        total += c;
    }
    m_super[(nwords + 7) / 8] = total;
    m_ones = total;
}

uint64_t PlainBitvec::rank(uint64_t i) const {
    assert(i <= m_size);
    if (i == 0) return 0;
    uint64_t b = i - 1;  // count bits [0..b] 0-based
    uint64_t w = b >> 6;
    uint64_t mask = (b & 63) == 63 ? ~0ull : ((1ull << ((b & 63) + 1)) - 1);
    return m_super[w / 8] + m_block[w] + std::popcount(m_words[w] & mask);
}

uint64_t PlainBitvec::select(uint64_t j) const {
    assert(j >= 1 && j <= m_ones);
    // superblock with cumulative count < j, then words, then in-word
    size_t lo = 0, hi = m_super.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (m_super[mid] < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t rem = j - m_super[lo];
    size_t w = lo * 8;
    for (;; ++w) {
        uint64_t c = std::popcount(m_words[w]);
        if (rem <= c) break;
        rem -= c;
    }
    return w * 64 + select_in_word(m_words[w], unsigned(rem));
}

uint64_t PlainBitvec::select0(uint64_t j) const {
    assert(j >= 1 && j <= zeros());
    size_t nsuper = m_super.size() - 1;
    size_t lo = 0, hi = nsuper;
    auto zeros_before = [&](size_t s) { return s * 512 - m_super[s]; };
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        uint64_t z = mid == nsuper ? (m_words.size() * 64 - m_ones) : zeros_before(mid);
        if (z < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t rem = j - zeros_before(lo);
    size_t w = lo * 8;
    for (;; ++w) {
        uint64_t c = std::popcount(~m_words[w]);
        if (rem <= c) break;
        rem -= c;
    }
    return w * 64 + select_in_word(~m_words[w], unsigned(rem));
}

void PlainBitvec::serialize(ByteWriter& w) const {
    w.put_magic(kPlainMagic);
    w.put_u16(kVersion);
    w.put_u64(m_size);
    w.put_words(m_words);
}

PlainBitvec PlainBitvec::deserialize(ByteReader& r) {
    r.expect_magic(kPlainMagic, "plain bitvector");
    if (r.get_u16() != kVersion) throw format_error("unsupported plain bitvector version");
    PlainBitvec v;
    v.m_size = r.get_u64();
    v.m_words = r.get_words();
    if (v.m_words.size() != (v.m_size + 63) / 64)
        throw format_error("plain bitvector length mismatch");
    uint64_t tail = v.m_size & 63;
    if (tail && v.m_size && (v.m_words.back() >> tail) != 0)
        throw format_error("plain bitvector has bits past its end");
    v.build_directories();
    return v;
}

SparseBitvec SparseBitvec::build(uint64_t universe, std::span<const uint64_t> positions) {
    SparseBitvec v;
    v.m_universe = universe;
    v.m_ones = positions.size();

    uint64_t prev = 0;
    for (uint64_t p : positions) {
        if (p <= prev || p > universe)
            throw std::invalid_argument("positions must be strictly increasing within [1,m]");
        prev = p;
    }

    uint8_t b = 1;
    if (v.m_ones > 0)
        while (b < 63 && (v.m_ones << b) < universe) ++b;
    v.m_low_width = b;

    v.m_low = PackedInts(v.m_ones, b);
    PlainBitvec::Builder high(v.m_ones + (universe >> b) + 1);
    uint64_t mask = (1ull << b) - 1;
    for (uint64_t j = 1; j <= v.m_ones; ++j) {
        uint64_t x = positions[j - 1];
        v.m_low.set(j - 1, x & mask);
        high.set(j + (x >> b));
    }
    v.m_high = std::move(high).build();
    return v;
}

uint64_t SparseBitvec::rank(uint64_t i) const {
    assert(i <= m_universe);
    if (m_ones == 0 || i == 0) return 0;
    uint64_t h = i >> m_low_width;
    uint64_t l = i & ((1ull << m_low_width) - 1);
    // ones with high part < h, then binary search the run with high part == h
    uint64_t lo = h == 0 ? 0 : m_high.rank(m_high.select0(h));
    uint64_t hi = m_high.rank(m_high.select0(h + 1));
    while (lo < hi) {
        uint64_t mid = (lo + hi + 1) / 2;  // candidate count
        if (m_low.get(mid - 1) <= l)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

void SparseBitvec::serialize(ByteWriter& w) const {
    w.put_magic(kSparseMagic);
    w.put_u16(kVersion);
    w.put_u64(m_universe);
    w.put_u64(m_ones);
    w.put_u8(m_low_width);
    m_low.serialize(w);
    m_high.serialize(w);
}

SparseBitvec SparseBitvec::deserialize(ByteReader& r) {
    r.expect_magic(kSparseMagic, "sparse bitvector");
    if (r.get_u16() != kVersion) throw format_error("unsupported sparse bitvector version");
    SparseBitvec v;
    v.m_universe = r.get_u64();
    v.m_ones = r.get_u64();
    v.m_low_width = r.get_u8();
    v.m_low = PackedInts::deserialize(r);
    v.m_high = PlainBitvec::deserialize(r);
    if (v.m_low.size() != v.m_ones || v.m_high.ones() != v.m_ones)
        throw format_error("sparse bitvector section mismatch");
    return v;
}

}  // namespace majscope
