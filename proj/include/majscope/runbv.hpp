#pragma once

#include <cstdint>
#include <vector>

#include "majscope/bitvec.hpp"

namespace majscope {

/* A run in a coalesced cover bitmap, inclusive 1-based endpoints. */
struct Run {
    uint64_t lo = 0;
    uint64_t hi = 0;
    friend auto operator<=>(const Run&, const Run&) = default;
};

/* Chunked representation of a run-structured bitmap of length n: chunks of b
   positions classified as all-1s (A1), mixed (A2) or all-0s, with the run
   boundary offsets p10/p01 of each mixed chunk stored as prefix sums via
   marked positions r + sum(p[1..r]) in sparse bitmaps. rank is O(1) plain
   bitmap operations plus two sparse selects. A mixed chunk must look like
   1^a 0^c 1^d (at most one 10 and one 01, the 10 first), which holds
   whenever every run spans at least b positions. */
class RunBitvec {
public:
    RunBitvec() = default;

    /* runs sorted, disjoint, gaps >= 1; throws if some chunk is not
       representable (a run shorter than b can still be accepted when no
       chunk ends up with two boundary pairs) */
    static RunBitvec build(const std::vector<Run>& runs, uint64_t n, uint64_t b);

    uint64_t size() const { return m_n; }
    uint64_t chunk() const { return m_b; }
    uint64_t ones() const { return m_ones; }
    uint64_t run_count() const { return m_runs; }

    uint64_t rank(uint64_t i) const;  // 0 <= i <= n

    bool covered(uint64_t i, uint64_t j) const {
        return rank(j) - rank(i - 1) == j - i + 1;
    }

    /* chunk classification bitmaps and boundary offsets, for inspection */
    const PlainBitvec& full_chunks() const { return m_a1; }
    const PlainBitvec& mixed_chunks() const { return m_a2; }
    uint64_t p10(uint64_t j) const { return p_sum(m_marks10, j) - p_sum(m_marks10, j - 1); }
    uint64_t p01(uint64_t j) const { return p_sum(m_marks01, j) - p_sum(m_marks01, j - 1); }
    uint64_t mixed_count() const { return m_a2.ones(); }

    void serialize(ByteWriter& w) const;
    static RunBitvec deserialize(ByteReader& r);

    uint64_t bit_size() const {
        return m_a1.bit_size() + m_a2.bit_size() + m_marks10.bit_size() + m_marks01.bit_size();
    }

private:
    /* sum of the first r offsets: select(marks, r) - r */
    static uint64_t p_sum(const SparseBitvec& marks, uint64_t r) {
        return r == 0 ? 0 : marks.select(r) - r;
    }

    uint64_t m_n = 0;
    uint64_t m_b = 1;
    uint64_t m_ones = 0;
    uint64_t m_runs = 0;
    PlainBitvec m_a1;
    PlainBitvec m_a2;
    SparseBitvec m_marks10;
    SparseBitvec m_marks01;
};

/* Run endpoints in two sparse bitmaps plus cumulative run lengths; rank by
   predecessor search, O(log) per query. Level-0 covers, whose runs can be
   shorter than the chunk size, use this variant. */
class SparseRunBitvec {
public:
    SparseRunBitvec() = default;

    static SparseRunBitvec build(const std::vector<Run>& runs, uint64_t n);

    uint64_t size() const { return m_n; }
    uint64_t ones() const { return m_ones; }
    uint64_t run_count() const { return m_starts.ones(); }

    uint64_t rank(uint64_t i) const;

    bool covered(uint64_t i, uint64_t j) const {
        return rank(j) - rank(i - 1) == j - i + 1;
    }

    void serialize(ByteWriter& w) const;
    static SparseRunBitvec deserialize(ByteReader& r);

    uint64_t bit_size() const {
        return m_starts.bit_size() + m_ends.bit_size() + m_cum.bit_size();
    }

private:
    uint64_t m_n = 0;
    uint64_t m_ones = 0;
    SparseBitvec m_starts;
    SparseBitvec m_ends;
    SparseBitvec m_cum;  // cumulative run lengths, for the prefix of complete runs
};

}  // namespace majscope
