#include "majscope/coalesce.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace majscope {

namespace {
unsigned __int128 chunk_size_wide(uint32_t level, const Rational& tau) {
    unsigned __int128 v = (unsigned __int128)tau.den << level;
    return v / tau.num + (v % tau.num != 0);
}
}  // namespace

uint64_t level_chunk_size(uint32_t level, const Rational& tau) {
    unsigned __int128 c = chunk_size_wide(level, tau);
    assert(c <= ~uint64_t(0));
    return uint64_t(c);
}

uint32_t level_of_length(uint64_t len, const Rational& tau) {
    assert(len >= 1);
    uint32_t l = 0;
    while (chunk_size_wide(l + 1, tau) <= len) ++l;
    return l;
}

LevelPlan level_plan(uint32_t level, const Rational& tau) {
    LevelPlan p;
    p.level = level;
    p.min_len = level == 0 ? 1 : level_chunk_size(level, tau);
    p.max_len = level_chunk_size(level + 1, tau) - 1;
    return p;
}

std::vector<std::vector<Segment>> assign_levels(std::span<const Segment> segments,
                                                const Rational& tau) {
    if (!tau.valid_threshold()) throw std::invalid_argument("tau must satisfy 0 < tau < 1");
    std::vector<std::vector<Segment>> per_level;
    for (const Segment& s : segments) {
        uint32_t l = level_of_length(s.length(), tau);
        if (per_level.size() <= l) per_level.resize(l + 1);
        per_level[l].push_back(s);
    }
    return per_level;
}

CoalescedLayout pack(const std::vector<std::vector<Segment>>& per_level,
                     std::span<const std::int64_t> a) {
    CoalescedLayout layout;
    layout.pos_id.assign(a.size(), 0);

    for (uint32_t level = 0; level < per_level.size(); ++level) {
        std::vector<Segment> segs(per_level[level].begin(), per_level[level].end());
        std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) {
            return x.lo != y.lo ? x.lo < y.lo : (x.hi != y.hi ? x.hi < y.hi : x.symbol < y.symbol);
        });

        // (last end, bitmap id), earliest end on top; ties resolved by id
        using Entry = std::pair<uint64_t, uint32_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

        for (const Segment& s : segs) {
            uint32_t id;
            if (!open.empty() && open.top().first + 1 < s.lo) {
                id = open.top().second;
                open.pop();
                layout.bitmaps[id].segments.push_back(s);
            } else {
                id = uint32_t(layout.bitmaps.size());
                layout.bitmaps.push_back({level, {s}});
            }
            open.push({s.hi, id});
            for (uint64_t k = s.lo; k <= s.hi; ++k)
                if (a[k - 1] == s.symbol) layout.pos_id[k - 1] = id;
        }
    }
    return layout;
}

std::vector<uint8_t> build_m_content_for(const CoalescedBitmap& bm,
                                         std::span<const std::int64_t> a) {
    std::vector<uint8_t> bits;
    bits.reserve(bm.total_run_length());
    for (const Segment& s : bm.segments)
        for (uint64_t k = s.lo; k <= s.hi; ++k) bits.push_back(a[k - 1] == s.symbol ? 1 : 0);
    return bits;
}

std::vector<std::vector<uint8_t>> build_m_content(const CoalescedLayout& layout,
                                                  std::span<const std::int64_t> a) {
    std::vector<std::vector<uint8_t>> out;
    out.reserve(layout.bitmaps.size());
    for (const CoalescedBitmap& bm : layout.bitmaps) out.push_back(build_m_content_for(bm, a));
    return out;
}

}  // namespace majscope
