#include "majscope/segments.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace majscope {

std::vector<SymbolOccurrences> group_occurrences(std::span<const std::int64_t> a) {
    std::map<std::int64_t, std::vector<uint64_t>> groups;
    for (size_t i = 0; i < a.size(); ++i) groups[a[i]].push_back(i + 1);
    std::vector<SymbolOccurrences> out;
    out.reserve(groups.size());
    for (auto& [sym, pos] : groups) out.push_back({sym, std::move(pos)});
    return out;
}

namespace {

/* All interval arithmetic below works on values of the form X - Y/tau.
   With tau = num/den they are integers over the fixed denominator num:
   scaled(X, Y) = X*num - Y*den. Comparisons stay in 128-bit integers. */
struct SegmentSolver {
    const std::vector<uint64_t>& q;  // occurrence positions, 0-based index
    __int128 num, den;
    uint64_t n;
    std::vector<Segment> out;  // merged union, maintained sorted
    std::int64_t symbol;

    __int128 scaled(__int128 x, __int128 y) const { return x * num - y * den; }

    /* A window holding occurrences a..b (0-based, count c = b-a+1) is a
       majority window iff c/tau > q[b]-q[a]+1. Its leftmost reach is the
       smallest integer > q[b]+1-c/tau and its rightmost reach the largest
       integer < q[a]-1+c/tau. The hull over all windows spanning index m
       splits: minimize g(b) = q[b]+1-(b-m)/tau over b >= m, then scan
       a <= m for the smallest f(a) = g_min-(m-a+1)/tau with f(a) < q[a]
       (that test is exactly the existence of a valid partner). */
    void solve(size_t lo, size_t hi) {  // inclusive index range
        if (lo > hi) return;
        size_t m = lo + (hi - lo) / 2;

        __int128 gmin = scaled(q[m] + 1, 0);
        for (size_t b = m; b <= hi; ++b)
            gmin = std::min(gmin, scaled(q[b] + 1, __int128(b - m)));
        __int128 lreal = 0;
        bool found = false;
        for (size_t a = lo; a <= m; ++a) {
            __int128 f = gmin - __int128(m - a + 1) * den;
            if (f < __int128(q[a]) * num) {
                lreal = f;
                found = true;
                break;  // f grows with a, the first qualifying a is minimal
            }
        }
        assert(found);  // a = m always qualifies since 1/tau > 1

        __int128 hmax = scaled(q[m] - 1, 0);
        for (size_t a = m + 1; a-- > lo;)
            hmax = std::max(hmax, scaled(q[a] - 1, -__int128(m - a)));
        __int128 rreal = 0;
        found = false;
        for (size_t b = hi + 1; b-- > m;) {
            __int128 g2 = hmax + __int128(b - m + 1) * den;
            if (g2 > __int128(q[b]) * num) {
                rreal = g2;
                found = true;
                break;  // g2 grows with b, the last qualifying b is maximal
            }
        }
        assert(found);

        int64_t l = int64_t(floor_div_i128(lreal, num)) + 1;
        int64_t r = int64_t(ceil_div_i128(rreal, num)) - 1;
        uint64_t cl = l < 1 ? 1 : uint64_t(l);
        uint64_t cr = r > int64_t(n) ? n : uint64_t(r);

        if (lo < m) solve(lo, m - 1);
        insert_merged({cl, cr, symbol});
        if (m < hi) solve(m + 1, hi);
    }

    /* Segments arrive left to right up to hull nesting; walk back over any
       touching or overlapping predecessors and fuse. */
    void insert_merged(Segment s) {
        while (!out.empty() && out.back().hi + 1 >= s.lo) {
            s.lo = std::min(s.lo, out.back().lo);
            s.hi = std::max(s.hi, out.back().hi);
            out.pop_back();
        }
        out.push_back(s);
    }
};

}  // namespace

std::vector<Segment> compute_segments(const SymbolOccurrences& occ, const Rational& tau,
                                      uint64_t n) {
    if (!tau.valid_threshold()) throw std::invalid_argument("tau must satisfy 0 < tau < 1");
    if (occ.positions.empty()) return {};
    for (size_t i = 0; i < occ.positions.size(); ++i) {
        if (occ.positions[i] < 1 || occ.positions[i] > n ||
            (i > 0 && occ.positions[i] <= occ.positions[i - 1]))
            throw std::invalid_argument("occurrence positions must be increasing within [1,n]");
    }
    SegmentSolver sv{occ.positions, tau.num, tau.den, n, {}, occ.symbol};
    sv.solve(0, occ.positions.size() - 1);
    return std::move(sv.out);
}

std::vector<Segment> brute_segments(std::span<const std::int64_t> a, const Rational& tau,
                                    std::int64_t symbol) {
    if (!tau.valid_threshold()) throw std::invalid_argument("tau must satisfy 0 < tau < 1");
    uint64_t n = a.size();
    // the union of majority windows starting at i is [i, max qualifying j]
    std::vector<Segment> raw;
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t count = 0, jmax = 0;
        for (uint64_t j = i; j <= n; ++j) {
            if (a[j - 1] == symbol) ++count;
            if (count_exceeds(count, j - i + 1, tau)) jmax = j;
        }
        if (jmax) raw.push_back({i, jmax, symbol});
    }
    std::vector<Segment> out;
    for (const Segment& s : raw) {
        if (!out.empty() && out.back().hi + 1 >= s.lo) {
            out.back().hi = std::max(out.back().hi, s.hi);
        } else {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace majscope
