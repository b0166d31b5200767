#include "majscope/accel.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace majscope {

namespace {

constexpr char kAccelTag[4] = {'A', 'C', 'C', 'L'};
constexpr uint16_t kVersion = 1;

uint32_t ceil_log2_u64(uint64_t v) {  // smallest L with 2^L >= v, v >= 1
    return uint32_t(std::bit_width(v - 1));
}

void write_id_list(ByteWriter& w, const std::vector<uint32_t>& ids, bool gamma) {
    w.put_u32(uint32_t(ids.size()));
    if (ids.empty()) return;
    if (!gamma) {
        uint32_t prev = 0;
        bool first = true;
        for (uint32_t id : ids) {
            w.put_varint(first ? uint64_t(id) + 1 : uint64_t(id) - prev);
            prev = id;
            first = false;
        }
    } else {
        BitWriter bw;
        uint32_t prev = 0;
        bool first = true;
        for (uint32_t id : ids) {
            bw.put_gamma(first ? uint64_t(id) + 1 : uint64_t(id) - prev);
            prev = id;
            first = false;
        }
        w.put_varint(bw.bytes().size());
        w.put_bytes(bw.bytes().data(), bw.bytes().size());
    }
}

std::vector<uint32_t> read_id_list(ByteReader& r, bool gamma) {
    uint32_t count = r.get_u32();
    std::vector<uint32_t> ids(count);
    if (count == 0) return ids;
    if (!gamma) {
        uint64_t cur = 0;
        for (uint32_t k = 0; k < count; ++k) {
            uint64_t d = r.get_varint();
            cur = k == 0 ? d - 1 : cur + d;
            ids[k] = uint32_t(cur);
        }
    } else {
        uint64_t nbytes = r.get_varint();
        BitReader br(r.raw(nbytes), nbytes * 8);
        uint64_t cur = 0;
        for (uint32_t k = 0; k < count; ++k) {
            uint64_t d = br.get_gamma();
            cur = k == 0 ? d - 1 : cur + d;
            ids[k] = uint32_t(cur);
        }
    }
    return ids;
}

uint64_t id_list_bits(const std::vector<uint32_t>& ids, bool gamma) {
    uint64_t bits = 32;  // count field
    uint32_t prev = 0;
    bool first = true;
    for (uint32_t id : ids) {
        uint64_t d = first ? uint64_t(id) + 1 : uint64_t(id) - prev;
        if (gamma)
            bits += 2 * (64 - std::countl_zero(d)) - 1;
        else
            bits += 8 * ((64 - std::countl_zero(d | 1) + 6) / 7);
        prev = id;
        first = false;
    }
    return bits;
}

}  // namespace

PieceIndex PieceIndex::build(const MajorityEncoding& e, const CoalescedLayout& layout) {
    PieceIndex pi;
    pi.m_n = e.size();
    pi.m_pair_count = uint32_t(e.pairs().size());
    if (pi.m_n == 0) {
        pi.m_level_min = 1;
        pi.m_level_max = 0;
        return pi;
    }
    if (layout.pos_id.size() != pi.m_n)
        throw std::invalid_argument("layout does not match the encoding");

    uint8_t width = uint8_t(pi.m_pair_count > 1 ? std::bit_width(pi.m_pair_count - 1) : 0);
    pi.m_pos_ids = PackedInts(pi.m_n, width);
    for (uint64_t k = 0; k < pi.m_n; ++k) pi.m_pos_ids.set(k, layout.pos_id[k]);

    pi.m_level_min = ceil_log2_inverse(e.tau());
    pi.m_level_max = ceil_log2_u64(std::max<uint64_t>(pi.m_n, 1));
    if (pi.m_level_min > pi.m_level_max) return pi;  // short path serves everything

    const Rational& tau = e.tau();
    std::vector<uint64_t> counters(pi.m_pair_count, 0);
    std::vector<uint32_t> touched;

    auto scan_piece = [&](uint64_t lo, uint64_t hi, uint64_t piece_len) {
        for (uint64_t k = lo; k <= hi; ++k) {
            uint32_t id = uint32_t(pi.m_pos_ids.get(k - 1));
            if (counters[id]++ == 0) touched.push_back(id);
        }
        std::vector<uint32_t> ids;
        for (uint32_t id : touched)
            // weak relevance: more than (tau/4) * 2^l occurrence bits inside
            if ((unsigned __int128)counters[id] * 4 * tau.den >
                (unsigned __int128)tau.num * piece_len)
                ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        for (uint64_t k = lo; k <= hi; ++k) --counters[pi.m_pos_ids.get(k - 1)];  // mirror pass
        touched.clear();
        return ids;
    };

    pi.m_levels.resize(pi.m_level_max - pi.m_level_min + 1);
    for (uint32_t l = pi.m_level_min; l <= pi.m_level_max; ++l) {
        Level& lev = pi.m_levels[l - pi.m_level_min];
        uint64_t plen = uint64_t(1) << l;
        uint64_t half = plen >> 1;

        uint64_t aligned_count = ceil_div_u64(pi.m_n, plen);
        lev.aligned.reserve(aligned_count);
        for (uint64_t p = 0; p < aligned_count; ++p) {
            uint64_t lo = p * plen + 1;
            uint64_t hi = std::min(pi.m_n, (p + 1) * plen);
            lev.aligned.push_back(scan_piece(lo, hi, plen));
        }

        uint64_t shifted_count = pi.m_n > half ? (pi.m_n - half - 1) / plen + 2 : 1;
        lev.shifted.reserve(shifted_count);
        for (uint64_t s = 0; s < shifted_count; ++s) {
            uint64_t lo = s == 0 ? 1 : (s - 1) * plen + half + 1;
            uint64_t hi = std::min(pi.m_n, s * plen + half);
            lev.shifted.push_back(scan_piece(lo, hi, plen));
        }
    }
    return pi;
}

const std::vector<uint32_t>& PieceIndex::piece_ids(uint32_t level, uint64_t i, uint64_t j) const {
    const Level& lev = m_levels[level - m_level_min];
    uint64_t plen = uint64_t(1) << level;
    uint64_t half = plen >> 1;
    uint64_t p = (i - 1) / plen;
    if (j <= (p + 1) * plen) return lev.aligned[p];
    uint64_t s = i <= half ? 0 : (i - half - 1) / plen + 1;
    assert(j <= s * plen + half && "range not contained in its piece level");
    return lev.shifted[s];
}

QueryAnswer query_fast(const MajorityEncoding& e, const PieceIndex& pi, uint64_t i, uint64_t j,
                       const Rational& tau_prime) {
    e.validate_range(i, j);
    e.validate_tau_prime(tau_prime);
    QueryAnswer ans;

    uint64_t len = j - i + 1;
    uint32_t level = ceil_log2_u64(len) + 1;
    bool is_short = (unsigned __int128)len * e.tau().num < e.tau().den;  // len < 1/tau
    if (!pi.has_piece_levels() || is_short) {
        // short range: one candidate pair per position, deduplicated
        std::vector<uint32_t> ids;
        ids.reserve(len);
        for (uint64_t k = i; k <= j; ++k) ids.push_back(pi.pos_id(k));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (uint32_t id : ids) {
            ++ans.probes;
            if (auto h = e.probe_pair(e.pairs()[id], i, j, tau_prime)) ans.hits.push_back(*h);
        }
        return ans;
    }

    if (level > pi.level_max()) level = pi.level_max();
    for (uint32_t id : pi.piece_ids(level, i, j)) {
        ++ans.probes;
        if (auto h = e.probe_pair(e.pairs()[id], i, j, tau_prime)) ans.hits.push_back(*h);
    }
    return ans;
}

void PieceIndex::serialize(ByteWriter& w, bool gamma_ids) const {
    ByteWriter body;
    body.put_u16(kVersion);
    body.put_u64(m_n);
    body.put_u32(m_pair_count);
    body.put_u32(m_level_min);
    body.put_u32(m_level_max);
    body.put_u8(gamma_ids ? 1 : 0);
    m_pos_ids.serialize(body);
    for (const Level& lev : m_levels) {
        body.put_u64(lev.aligned.size());
        for (const auto& ids : lev.aligned) write_id_list(body, ids, gamma_ids);
        body.put_u64(lev.shifted.size());
        for (const auto& ids : lev.shifted) write_id_list(body, ids, gamma_ids);
    }
    w.put_magic(kAccelTag);
    w.put_u64(body.size());
    w.put_u64(fnv1a64(body.data(), body.size()));
    w.put_bytes(body.data(), body.size());
}

PieceIndex PieceIndex::deserialize(ByteReader& r) {
    r.expect_magic(kAccelTag, "piece index");
    uint64_t len = r.get_u64();
    uint64_t checksum = r.get_u64();
    const uint8_t* p = r.raw(len);
    if (fnv1a64(p, len) != checksum) throw format_error("piece index checksum failure");

    ByteReader br(p, len);
    if (br.get_u16() != kVersion) throw format_error("unsupported piece index version");
    PieceIndex pi;
    pi.m_n = br.get_u64();
    pi.m_pair_count = br.get_u32();
    pi.m_level_min = br.get_u32();
    pi.m_level_max = br.get_u32();
    bool gamma = br.get_u8() != 0;
    pi.m_pos_ids = PackedInts::deserialize(br);
    if (pi.m_pos_ids.size() != pi.m_n) throw format_error("piece index position table mismatch");
    if (pi.has_piece_levels()) {
        pi.m_levels.resize(pi.m_level_max - pi.m_level_min + 1);
        for (Level& lev : pi.m_levels) {
            uint64_t ac = br.get_u64();
            lev.aligned.reserve(ac);
            for (uint64_t k = 0; k < ac; ++k) lev.aligned.push_back(read_id_list(br, gamma));
            uint64_t sc = br.get_u64();
            lev.shifted.reserve(sc);
            for (uint64_t k = 0; k < sc; ++k) lev.shifted.push_back(read_id_list(br, gamma));
        }
    }
    return pi;
}

uint64_t PieceIndex::bit_size(bool gamma_ids) const {
    uint64_t bits = m_pos_ids.bit_size();
    for (const Level& lev : m_levels) {
        for (const auto& ids : lev.aligned) bits += id_list_bits(ids, gamma_ids);
        for (const auto& ids : lev.shifted) bits += id_list_bits(ids, gamma_ids);
    }
    return bits;
}

std::vector<uint8_t> serialize_with_accel(const MajorityEncoding& e, const PieceIndex& pi,
                                          bool gamma_ids) {
    std::vector<uint8_t> bytes = e.serialize();
    ByteWriter w;
    pi.serialize(w, gamma_ids);
    std::vector<uint8_t> tail = w.take();
    bytes.insert(bytes.end(), tail.begin(), tail.end());
    return bytes;
}

LoadedEncoding load_encoding(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    LoadedEncoding out;
    out.encoding = MajorityEncoding::deserialize(r);
    if (!r.done()) out.accel = PieceIndex::deserialize(r);
    if (!r.done()) throw format_error("trailing bytes after the encoding stream");
    return out;
}

}  // namespace majscope
