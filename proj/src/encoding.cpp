#include "majscope/encoding.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace majscope {

namespace {

constexpr char kEncodingMagic[4] = {'R', 'M', 'A', 'J'};
constexpr char kMultiMagic[4] = {'R', 'M', 'J', 'M'};
constexpr uint16_t kVersion = 1;

}  // namespace

uint32_t ceil_log2_inverse(const Rational& r) {
    // smallest L with 2^L >= den/num
    uint32_t l = 0;
    while (((unsigned __int128)r.num << l) < r.den) ++l;
    return l;
}

MajorityEncoding MajorityEncoding::build(std::span<const std::int64_t> a, const Rational& tau) {
    CoalescedLayout layout;
    return build_with_layout(a, tau, layout);
}

MajorityEncoding MajorityEncoding::build_with_layout(std::span<const std::int64_t> a,
                                                     const Rational& tau,
                                                     CoalescedLayout& layout_out) {
    if (!tau.valid_threshold()) throw std::invalid_argument("tau must satisfy 0 < tau < 1");
    MajorityEncoding e;
    e.m_n = a.size();
    e.m_tau = tau;
    if (a.empty()) {
        layout_out = {};
        return e;
    }

    std::vector<Segment> all;
    for (const SymbolOccurrences& occ : group_occurrences(a)) {
        std::vector<Segment> cx = compute_segments(occ, tau, a.size());
        all.insert(all.end(), cx.begin(), cx.end());
    }

    layout_out = pack(assign_levels(all, tau), a);

    e.m_pairs.reserve(layout_out.bitmaps.size());
    for (uint32_t id = 0; id < layout_out.bitmaps.size(); ++id) {
        const CoalescedBitmap& bm = layout_out.bitmaps[id];
        CoalescedPair pair;
        pair.id = id;
        pair.level = bm.level;

        std::vector<Run> runs;
        runs.reserve(bm.segments.size());
        for (const Segment& s : bm.segments) runs.push_back({s.lo, s.hi});
        if (bm.level == 0) {
            pair.cover = SparseRunBitvec::build(runs, a.size());
        } else {
            pair.cover = RunBitvec::build(runs, a.size(), level_chunk_size(bm.level, tau));
        }

        std::vector<uint8_t> mbits = build_m_content_for(bm, a);
        std::vector<uint64_t> ones;
        for (size_t k = 0; k < mbits.size(); ++k)
            if (mbits[k]) ones.push_back(k + 1);
        pair.occ = SparseBitvec::build(mbits.size(), ones);

        e.m_pairs.push_back(std::move(pair));
    }
    return e;
}

void MajorityEncoding::validate_range(uint64_t i, uint64_t j) const {
    if (i < 1 || j > m_n || i > j) throw std::out_of_range("range out of bounds");
}

void MajorityEncoding::validate_tau_prime(const Rational& tau_prime) const {
    if (!tau_prime.valid_threshold())
        throw std::invalid_argument("tau' must satisfy 0 < tau' < 1");
    if (tau_prime < m_tau)
        throw std::invalid_argument("tau' below the encoding's build threshold");
}

std::optional<Hit> MajorityEncoding::probe_pair(const CoalescedPair& p, uint64_t i, uint64_t j,
                                                const Rational& tau_prime) const {
    if (!p.cover_covered(i, j)) return std::nullopt;
    uint64_t i2 = p.cover_rank(i);
    uint64_t j2 = p.cover_rank(j);
    uint64_t before = p.occ.rank(i2 - 1);
    uint64_t count = p.occ.rank(j2) - before;
    if (!count_exceeds(count, j - i + 1, tau_prime)) return std::nullopt;
    Hit h;
    h.pair_id = p.id;
    h.mapped_lo = i2;
    h.mapped_hi = j2;
    h.count = count;
    h.base = i - i2;
    h.ones_before = before;
    return h;
}

QueryAnswer MajorityEncoding::query(uint64_t i, uint64_t j, const Rational& tau_prime) const {
    validate_range(i, j);
    validate_tau_prime(tau_prime);
    QueryAnswer ans;
    for (const CoalescedPair& p : m_pairs) {
        ++ans.probes;
        if (std::optional<Hit> h = probe_pair(p, i, j, tau_prime)) ans.hits.push_back(*h);
    }
    return ans;
}

uint64_t MajorityEncoding::report(const Hit& hit, uint64_t t) const {
    if (t < 1 || t > hit.count) throw std::out_of_range("occurrence index out of range");
    const CoalescedPair& p = m_pairs.at(hit.pair_id);
    return hit.base + p.occ.select(hit.ones_before + t);
}

/* ---- serialization ----
   RMAJ | u16 version | u64 region_len | u64 checksum | region |
   optional tagged sections (the accelerator appends its own)

   region: u64 tau_num | u64 tau_den | u64 n | u32 pair_count |
   u64 offset per pair (relative to region start) | pair sections.
   A pair section is u32 id | u32 level | u8 cover_tag | cover | occ. */

std::vector<uint8_t> MajorityEncoding::serialize() const {
    ByteWriter core;
    core.put_u64(m_tau.num);
    core.put_u64(m_tau.den);
    core.put_u64(m_n);
    core.put_u32(uint32_t(m_pairs.size()));
    size_t table_at = core.size();
    for (size_t k = 0; k < m_pairs.size(); ++k) core.put_u64(0);
    for (size_t k = 0; k < m_pairs.size(); ++k) {
        core.patch_u64(table_at + 8 * k, core.size());
        const CoalescedPair& p = m_pairs[k];
        core.put_u32(p.id);
        core.put_u32(p.level);
        core.put_u8(p.chunked() ? 1 : 0);
        if (p.chunked())
            std::get<RunBitvec>(p.cover).serialize(core);
        else
            std::get<SparseRunBitvec>(p.cover).serialize(core);
        p.occ.serialize(core);
    }

    ByteWriter out;
    out.put_magic(kEncodingMagic);
    out.put_u16(kVersion);
    out.put_u64(core.size());
    out.put_u64(fnv1a64(core.data(), core.size()));
    out.put_bytes(core.data(), core.size());
    return out.take();
}

MajorityEncoding MajorityEncoding::deserialize(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    return deserialize(r);
}

MajorityEncoding MajorityEncoding::deserialize(ByteReader& r) {
    r.expect_magic(kEncodingMagic, "encoding");
    if (r.get_u16() != kVersion) throw format_error("unsupported encoding version");
    uint64_t core_len = r.get_u64();
    uint64_t checksum = r.get_u64();
    const uint8_t* core = r.raw(core_len);
    if (fnv1a64(core, core_len) != checksum) throw format_error("encoding checksum failure");

    MajorityEncoding e;
    ByteReader cr(core, core_len);
    e.m_tau.num = cr.get_u64();
    e.m_tau.den = cr.get_u64();
    if (!e.m_tau.valid_threshold()) throw format_error("stored tau is not a valid threshold");
    e.m_n = cr.get_u64();
    uint32_t count = cr.get_u32();
    std::vector<uint64_t> offsets(count);
    for (uint32_t k = 0; k < count; ++k) offsets[k] = cr.get_u64();
    e.m_pairs.reserve(count);
    for (uint32_t k = 0; k < count; ++k) {
        if (offsets[k] != cr.pos()) throw format_error("pair table offset mismatch");
        CoalescedPair p;
        p.id = cr.get_u32();
        p.level = cr.get_u32();
        uint8_t tag = cr.get_u8();
        if (tag == 1)
            p.cover = RunBitvec::deserialize(cr);
        else if (tag == 0)
            p.cover = SparseRunBitvec::deserialize(cr);
        else
            throw format_error("unknown cover representation tag");
        p.occ = SparseBitvec::deserialize(cr);
        if (p.occ.universe() != p.cover_ones())
            throw format_error("occurrence bitmap does not match its cover");
        e.m_pairs.push_back(std::move(p));
    }
    return e;
}

uint64_t MajorityEncoding::bit_size() const {
    uint64_t bits = 0;
    for (const CoalescedPair& p : m_pairs) {
        bits += std::visit([](const auto& c) { return c.bit_size(); }, p.cover);
        bits += p.occ.bit_size();
    }
    return bits;
}

MultiEncoding MultiEncoding::build(std::span<const std::int64_t> a, const Rational& tau) {
    if (!tau.valid_threshold()) throw std::invalid_argument("tau must satisfy 0 < tau < 1");
    MultiEncoding me;
    me.m_tau = tau;
    uint32_t levels = std::max(1u, ceil_log2_inverse(tau));
    me.m_structures.reserve(levels);
    for (uint32_t l = 1; l <= levels; ++l)
        me.m_structures.push_back(MajorityEncoding::build(a, Rational{1, uint64_t(1) << l}));
    return me;
}

const MajorityEncoding& MultiEncoding::structure_for(const Rational& tau_prime) const {
    if (!tau_prime.valid_threshold())
        throw std::invalid_argument("tau' must satisfy 0 < tau' < 1");
    if (tau_prime < m_tau)
        throw std::invalid_argument("tau' below the bundle's build threshold");
    uint32_t l = std::max(1u, ceil_log2_inverse(tau_prime));
    assert(l <= m_structures.size());
    return m_structures[l - 1];
}

QueryAnswer MultiEncoding::query(uint64_t i, uint64_t j, const Rational& tau_prime) const {
    return structure_for(tau_prime).query(i, j, tau_prime);
}

std::vector<uint8_t> MultiEncoding::serialize() const {
    ByteWriter out;
    out.put_magic(kMultiMagic);
    out.put_u16(kVersion);
    out.put_u64(m_tau.num);
    out.put_u64(m_tau.den);
    out.put_u32(uint32_t(m_structures.size()));
    for (const MajorityEncoding& e : m_structures) {
        std::vector<uint8_t> bytes = e.serialize();
        out.put_u64(bytes.size());
        out.put_bytes(bytes.data(), bytes.size());
    }
    return out.take();
}

MultiEncoding MultiEncoding::deserialize(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect_magic(kMultiMagic, "multi encoding");
    if (r.get_u16() != kVersion) throw format_error("unsupported multi encoding version");
    MultiEncoding me;
    me.m_tau.num = r.get_u64();
    me.m_tau.den = r.get_u64();
    if (!me.m_tau.valid_threshold()) throw format_error("stored tau is not a valid threshold");
    uint32_t count = r.get_u32();
    for (uint32_t k = 0; k < count; ++k) {
        uint64_t len = r.get_u64();
        const uint8_t* p = r.raw(len);
        me.m_structures.push_back(MajorityEncoding::deserialize({p, size_t(len)}));
    }
    return me;
}

}  // namespace majscope
