#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majscope/rational.hpp"
#include "majscope/segments.hpp"

namespace majscope {

/* Length class of level l: ceil(2^l/tau) .. ceil(2^(l+1)/tau)-1, with level 0
   starting from length 1. Levels tile all lengths without overlap. */
struct LevelPlan {
    uint32_t level = 0;
    uint64_t min_len = 0;
    uint64_t max_len = 0;
};

uint64_t level_chunk_size(uint32_t level, const Rational& tau);  // ceil(2^l/tau)
uint32_t level_of_length(uint64_t len, const Rational& tau);
LevelPlan level_plan(uint32_t level, const Rational& tau);

/* Group segments by the level of their length; index = level. */
std::vector<std::vector<Segment>> assign_levels(std::span<const Segment> segments,
                                                const Rational& tau);

/* One coalesced cover bitmap: disjoint segments of several symbols, sorted,
   separated by at least one uncovered position. */
struct CoalescedBitmap {
    uint32_t level = 0;
    std::vector<Segment> segments;

    uint64_t total_run_length() const {
        uint64_t t = 0;
        for (const Segment& s : segments) t += s.length();
        return t;
    }
};

struct CoalescedLayout {
    std::vector<CoalescedBitmap> bitmaps;  // index == global bitmap id, level-major
    std::vector<uint32_t> pos_id;          // pos_id[k-1] hosts the segment of C_{A[k]} with k
};

/* First-fit greedy per level, earliest-ending bitmap first (min-heap on the
   last segment end). Also fills pos_id, which needs the array to match each
   position against its own symbol's segment. */
CoalescedLayout pack(const std::vector<std::vector<Segment>>& per_level,
                     std::span<const std::int64_t> a);

/* Occurrence bits of one coalesced bitmap: runs in order, one bit per covered
   position, set iff the array holds the run's symbol there. */
std::vector<uint8_t> build_m_content_for(const CoalescedBitmap& bm,
                                         std::span<const std::int64_t> a);

std::vector<std::vector<uint8_t>> build_m_content(const CoalescedLayout& layout,
                                                  std::span<const std::int64_t> a);

}  // namespace majscope
