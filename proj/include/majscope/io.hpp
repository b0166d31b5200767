#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace majscope {

/* Raised on any malformed serialized stream: bad magic, version,
   truncation, or checksum mismatch. */
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ByteWriter {
public:
    void put_u8(uint8_t v) { m_buf.push_back(v); }

    void put_u16(uint16_t v) {
        put_u8(uint8_t(v));
        put_u8(uint8_t(v >> 8));
    }

    void put_u32(uint32_t v) {
        put_u16(uint16_t(v));
        put_u16(uint16_t(v >> 16));
    }

    void put_u64(uint64_t v) {
        put_u32(uint32_t(v));
        put_u32(uint32_t(v >> 32));
    }

    void put_magic(const char magic[4]) {
        for (int i = 0; i < 4; ++i) put_u8(uint8_t(magic[i]));
    }

    void put_bytes(const uint8_t* p, size_t len) { m_buf.insert(m_buf.end(), p, p + len); }

    /* length-prefixed little-endian word section */
    void put_words(const std::vector<uint64_t>& words) {
        put_u64(words.size());
        for (uint64_t w : words) put_u64(w);
    }

    /* LEB128 */
    void put_varint(uint64_t v) {
        while (v >= 0x80) {
            put_u8(uint8_t(v) | 0x80);
            v >>= 7;
        }
        put_u8(uint8_t(v));
    }

    size_t size() const { return m_buf.size(); }
    const uint8_t* data() const { return m_buf.data(); }
    std::vector<uint8_t> take() { return std::move(m_buf); }

    /* patch a u64 written earlier (offset tables) */
    void patch_u64(size_t at, uint64_t v) {
        for (int i = 0; i < 8; ++i) m_buf[at + i] = uint8_t(v >> (8 * i));
    }

private:
    std::vector<uint8_t> m_buf;
};

class ByteReader {
public:
    ByteReader(const uint8_t* p, size_t len) : m_p(p), m_len(len) {}
    explicit ByteReader(std::span<const uint8_t> s) : m_p(s.data()), m_len(s.size()) {}

    uint8_t get_u8() {
        need(1);
        return m_p[m_pos++];
    }

    uint16_t get_u16() {
        uint16_t lo = get_u8();
        return uint16_t(lo | (uint16_t(get_u8()) << 8));
    }

    uint32_t get_u32() {
        uint32_t lo = get_u16();
        return lo | (uint32_t(get_u16()) << 16);
    }

    uint64_t get_u64() {
        uint64_t lo = get_u32();
        return lo | (uint64_t(get_u32()) << 32);
    }

    void expect_magic(const char magic[4], const char* what) {
        need(4);
        if (std::memcmp(m_p + m_pos, magic, 4) != 0)
            throw format_error(std::string("bad magic for ") + what);
        m_pos += 4;
    }

    std::vector<uint64_t> get_words() {
        uint64_t count = get_u64();
        if (count > remaining() / 8) throw format_error("truncated word section");
        std::vector<uint64_t> out(count);
        for (uint64_t i = 0; i < count; ++i) out[i] = get_u64();
        return out;
    }

    uint64_t get_varint() {
        uint64_t v = 0;
        int shift = 0;
        for (;;) {
            uint8_t b = get_u8();
            v |= uint64_t(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
            shift += 7;
            if (shift >= 64) throw format_error("varint overflow");
        }
    }

    const uint8_t* raw(size_t len) {
        need(len);
        const uint8_t* p = m_p + m_pos;
        m_pos += len;
        return p;
    }

    size_t pos() const { return m_pos; }
    size_t remaining() const { return m_len - m_pos; }
    bool done() const { return m_pos == m_len; }

private:
    void need(size_t n) {
        if (m_len - m_pos < n) throw format_error("truncated stream");
    }

    const uint8_t* m_p;
    size_t m_len;
    size_t m_pos = 0;
};

inline uint64_t fnv1a64(const uint8_t* p, size_t len) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

/* Fixed-width integer array packed into 64-bit words. */
class PackedInts {
public:
    PackedInts() = default;
    PackedInts(uint64_t size, uint8_t width)
        : m_size(size), m_width(width), m_words((size * width + 63) / 64, 0) {}

    void set(uint64_t idx, uint64_t v) {
        if (m_width == 0) return;
        uint64_t bit = idx * m_width;
        uint64_t w = bit >> 6, off = bit & 63;
        uint64_t mask = m_width == 64 ? ~0ull : ((1ull << m_width) - 1);
        m_words[w] = (m_words[w] & ~(mask << off)) | ((v & mask) << off);
        if (off + m_width > 64)
            m_words[w + 1] =
                (m_words[w + 1] & ~(mask >> (64 - off))) | ((v & mask) >> (64 - off));
    }

    uint64_t get(uint64_t idx) const {
        if (m_width == 0) return 0;
        uint64_t bit = idx * m_width;
        uint64_t w = bit >> 6, off = bit & 63;
        uint64_t mask = m_width == 64 ? ~0ull : ((1ull << m_width) - 1);
        uint64_t v = m_words[w] >> off;
        if (off + m_width > 64) v |= m_words[w + 1] << (64 - off);
        return v & mask;
    }

    uint64_t size() const { return m_size; }
    uint8_t width() const { return m_width; }
    uint64_t bit_size() const { return m_size * m_width; }

    void serialize(ByteWriter& w) const {
        w.put_u64(m_size);
        w.put_u8(m_width);
        w.put_words(m_words);
    }

    static PackedInts deserialize(ByteReader& r) {
        PackedInts p;
        p.m_size = r.get_u64();
        p.m_width = r.get_u8();
        p.m_words = r.get_words();
        if (p.m_words.size() != (p.m_size * p.m_width + 63) / 64)
            throw format_error("packed array length mismatch");
        return p;
    }

private:
    uint64_t m_size = 0;
    uint8_t m_width = 0;
    std::vector<uint64_t> m_words;
};

/* MSB-first bit stream, used by the gamma-coded id lists. */
class BitWriter {
public:
    void put_bit(bool b) {
        if (m_fill == 0) {
            m_bytes.push_back(0);
            m_fill = 8;
        }
        --m_fill;
        if (b) m_bytes.back() |= uint8_t(1u << m_fill);
        ++m_bits;
    }

    void put_fixed(uint64_t v, int width) {
        for (int i = width - 1; i >= 0; --i) put_bit((v >> i) & 1);
    }

    /* Elias gamma code of v >= 1 */
    void put_gamma(uint64_t v) {
        int len = 63 - __builtin_clzll(v);
        for (int i = 0; i < len; ++i) put_bit(false);
        put_fixed(v, len + 1);
    }

    uint64_t bit_count() const { return m_bits; }
    const std::vector<uint8_t>& bytes() const { return m_bytes; }

private:
    std::vector<uint8_t> m_bytes;
    uint64_t m_bits = 0;
    int m_fill = 0;
};

class BitReader {
public:
    BitReader(const uint8_t* p, uint64_t nbits) : m_p(p), m_nbits(nbits) {}

    bool get_bit() {
        if (m_pos >= m_nbits) throw format_error("bit stream overrun");
        bool b = (m_p[m_pos >> 3] >> (7 - (m_pos & 7))) & 1;
        ++m_pos;
        return b;
    }

    uint64_t get_fixed(int width) {
        uint64_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | uint64_t(get_bit());
        return v;
    }

    uint64_t get_gamma() {
        int len = 0;
        while (!get_bit()) ++len;
        uint64_t v = 1;
        for (int i = 0; i < len; ++i) v = (v << 1) | uint64_t(get_bit());
        return v;
    }

private:
    const uint8_t* m_p;
    uint64_t m_nbits;
    uint64_t m_pos = 0;
};

}  // namespace majscope
