#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majscope/rational.hpp"

namespace majscope {

/* Occurrence positions of one distinct symbol, strictly increasing, 1-based. */
struct SymbolOccurrences {
    std::int64_t symbol = 0;
    std::vector<uint64_t> positions;
};

/* One maximal cover interval of a symbol: every position in [lo,hi] lies in
   some window where the symbol is a tau-majority. */
struct Segment {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::int64_t symbol = 0;

    uint64_t length() const { return hi - lo + 1; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/* Partition [1,n] into per-symbol occurrence lists, keyed by distinct value. */
std::vector<SymbolOccurrences> group_occurrences(std::span<const std::int64_t> a);

/* Maximal cover intervals of one symbol, divide-and-conquer over its
   occurrence list, O(|P| log |P|) exact-rational arithmetic. Output is
   sorted, disjoint, with at least one uncovered position between intervals. */
std::vector<Segment> compute_segments(const SymbolOccurrences& occ, const Rational& tau,
                                      uint64_t n);

/* Quadratic reference: mark every position covered by any window where the
   symbol is a tau-majority, then merge maximal runs. Test oracle only. */
std::vector<Segment> brute_segments(std::span<const std::int64_t> a, const Rational& tau,
                                    std::int64_t symbol);

}  // namespace majscope
