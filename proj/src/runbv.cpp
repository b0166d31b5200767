#include "majscope/runbv.hpp"

#include <cassert>
#include <stdexcept>

#include "majscope/rational.hpp"

namespace majscope {

namespace {

constexpr char kRunMagic[4] = {'M', 'J', 'R', 'B'};
constexpr char kSparseRunMagic[4] = {'M', 'J', 'S', 'R'};
constexpr uint16_t kVersion = 1;

void validate_runs(const std::vector<Run>& runs, uint64_t n) {
    uint64_t prev_end = 0;
    for (const Run& r : runs) {
        if (r.lo < 1 || r.hi < r.lo || r.hi > n)
            throw std::invalid_argument("run endpoints out of range");
        if (r.lo <= prev_end + 1 && prev_end > 0)
            throw std::invalid_argument("runs must be sorted with gaps of at least one 0");
        prev_end = r.hi;
    }
}

}  // namespace

RunBitvec RunBitvec::build(const std::vector<Run>& runs, uint64_t n, uint64_t b) {
    if (b < 1) throw std::invalid_argument("chunk size must be positive");
    validate_runs(runs, n);

    RunBitvec v;
    v.m_n = n;
    v.m_b = b;
    v.m_runs = runs.size();
    for (const Run& r : runs) v.m_ones += r.hi - r.lo + 1;

    uint64_t chunks = ceil_div_u64(n, b);
    struct ChunkState {
        uint64_t p10 = 0;  // position of the 1 preceding a 0 (0: chunk starts with 0)
        uint64_t p01 = 0;  // position of the 0 preceding a 1 (b: chunk ends with 0)
        uint64_t ones = 0;
    };
    std::vector<ChunkState> st(chunks);

    // derive each chunk's shape from the run fragments crossing it; the
    // final partial chunk counts as zero-padded to b
    size_t ri = 0;
    for (uint64_t c = 0; c < chunks; ++c) {
        uint64_t clo = c * b + 1, chi = c * b + b;
        while (ri < runs.size() && runs[ri].hi < clo) ++ri;
        ChunkState& cs = st[c];
        uint64_t pieces = 0;
        uint64_t first_s = 0, first_e = 0, second_s = 0, second_e = 0;
        for (size_t k = ri; k < runs.size() && runs[k].lo <= chi; ++k) {
            uint64_t s = std::max(runs[k].lo, clo), e = std::min(runs[k].hi, chi);
            ++pieces;
            if (pieces == 1) first_s = s, first_e = e;
            if (pieces == 2) second_s = s, second_e = e;
            cs.ones += e - s + 1;
        }
        if (pieces == 0) continue;
        if (pieces == 1) {
            if (first_s == clo && first_e == chi) continue;  // full chunk
            if (first_s == clo) {                            // 1^a 0^(b-a)
                cs.p10 = first_e - clo + 1;
                cs.p01 = b;
            } else if (first_e == chi) {  // 0^c 1^(b-c)
                cs.p10 = 0;
                cs.p01 = first_s - clo;
            } else {  // 0 1 0, a run strictly inside the chunk
                throw std::invalid_argument("run too short for chunk size");
            }
        } else if (pieces == 2 && first_s == clo && second_e == chi) {  // 1^a 0^c 1^d
            cs.p10 = first_e - clo + 1;
            cs.p01 = second_s - clo;
        } else {
            throw std::invalid_argument("run too short for chunk size");
        }
    }

    PlainBitvec::Builder a1(chunks), a2(chunks);
    std::vector<uint64_t> marks10, marks01;
    uint64_t sum10 = 0, sum01 = 0, mixed = 0;
    for (uint64_t c = 0; c < chunks; ++c) {
        const ChunkState& cs = st[c];
        bool full = cs.ones == b;
        bool mixedc = cs.ones > 0 && !full;
        if (full) a1.set(c + 1);
        if (mixedc) {
            a2.set(c + 1);
            ++mixed;
            assert(cs.p10 < cs.p01);
            sum10 += cs.p10;
            sum01 += cs.p01;
            marks10.push_back(mixed + sum10);
            marks01.push_back(mixed + sum01);
        }
    }
    v.m_a1 = std::move(a1).build();
    v.m_a2 = std::move(a2).build();
    v.m_marks10 = SparseBitvec::build(mixed + sum10 + 1, marks10);
    v.m_marks01 = SparseBitvec::build(mixed + sum01 + 1, marks01);
    return v;
}

uint64_t RunBitvec::rank(uint64_t i) const {
    assert(i <= m_n);
    if (i == 0) return 0;
    uint64_t c = i / m_b;  // complete chunks before position i
    uint64_t k = i % m_b;
    uint64_t r1 = m_a1.rank(c);
    uint64_t r2 = m_a2.rank(c);
    uint64_t total = m_b * r1 + (p_sum(m_marks10, r2) + m_b * r2 - p_sum(m_marks01, r2));
    if (k > 0) {
        uint64_t cc = c + 1;  // 1-based chunk holding position i
        if (m_a2.get(cc)) {
            uint64_t j = m_a2.rank(cc);
            uint64_t q10 = p10(j), q01 = p01(j);
            if (k <= q10)
                total += k;
            else if (k <= q01)
                total += q10;
            else
                total += q10 + (k - q01);
        } else if (m_a1.get(cc)) {
            total += k;
        }
    }
    return total;
}

void RunBitvec::serialize(ByteWriter& w) const {
    w.put_magic(kRunMagic);
    w.put_u16(kVersion);
    w.put_u64(m_n);
    w.put_u64(m_b);
    w.put_u64(m_ones);
    w.put_u64(m_runs);
    m_a1.serialize(w);
    m_a2.serialize(w);
    m_marks10.serialize(w);
    m_marks01.serialize(w);
}

RunBitvec RunBitvec::deserialize(ByteReader& r) {
    r.expect_magic(kRunMagic, "run bitvector");
    if (r.get_u16() != kVersion) throw format_error("unsupported run bitvector version");
    RunBitvec v;
    v.m_n = r.get_u64();
    v.m_b = r.get_u64();
    v.m_ones = r.get_u64();
    v.m_runs = r.get_u64();
    if (v.m_b < 1) throw format_error("run bitvector chunk size must be positive");
    v.m_a1 = PlainBitvec::deserialize(r);
    v.m_a2 = PlainBitvec::deserialize(r);
    v.m_marks10 = SparseBitvec::deserialize(r);
    v.m_marks01 = SparseBitvec::deserialize(r);
    if (v.m_a1.size() != ceil_div_u64(v.m_n, v.m_b) || v.m_a2.size() != v.m_a1.size())
        throw format_error("run bitvector chunk bitmaps mismatch");
    return v;
}

SparseRunBitvec SparseRunBitvec::build(const std::vector<Run>& runs, uint64_t n) {
    validate_runs(runs, n);
    SparseRunBitvec v;
    v.m_n = n;
    std::vector<uint64_t> starts, ends, cum;
    starts.reserve(runs.size());
    ends.reserve(runs.size());
    cum.reserve(runs.size());
    uint64_t total = 0;
    for (const Run& r : runs) {
        starts.push_back(r.lo);
        ends.push_back(r.hi);
        total += r.hi - r.lo + 1;
        cum.push_back(total);
    }
    v.m_ones = total;
    v.m_starts = SparseBitvec::build(n, starts);
    v.m_ends = SparseBitvec::build(n, ends);
    v.m_cum = SparseBitvec::build(total, cum);
    return v;
}

uint64_t SparseRunBitvec::rank(uint64_t i) const {
    assert(i <= m_n);
    if (i == 0 || m_ones == 0) return 0;
    uint64_t t = m_starts.rank(i);  // runs starting at or before i
    if (t == 0) return 0;
    uint64_t before = t == 1 ? 0 : m_cum.select(t - 1);
    uint64_t s = m_starts.select(t);
    uint64_t e = m_ends.select(t);
    return before + std::min(i, e) - s + 1;
}

void SparseRunBitvec::serialize(ByteWriter& w) const {
    w.put_magic(kSparseRunMagic);
    w.put_u16(kVersion);
    w.put_u64(m_n);
    w.put_u64(m_ones);
    m_starts.serialize(w);
    m_ends.serialize(w);
    m_cum.serialize(w);
}

SparseRunBitvec SparseRunBitvec::deserialize(ByteReader& r) {
    r.expect_magic(kSparseRunMagic, "sparse run bitvector");
    if (r.get_u16() != kVersion) throw format_error("unsupported sparse run bitvector version");
    SparseRunBitvec v;
    v.m_n = r.get_u64();
    v.m_ones = r.get_u64();
    v.m_starts = SparseBitvec::deserialize(r);
    v.m_ends = SparseBitvec::deserialize(r);
    v.m_cum = SparseBitvec::deserialize(r);
    if (v.m_starts.ones() != v.m_ends.ones() || v.m_starts.ones() != v.m_cum.ones())
        throw format_error("sparse run bitvector section mismatch");
    return v;
}

}  // namespace majscope
