#include <doctest.h>

#include <random>

#include "majscope/segments.hpp"

using namespace majscope;

namespace {

const std::vector<std::int64_t> kRunning{1, 3, 2, 3, 3, 1, 1};

std::vector<Segment> segments_of(const std::vector<std::int64_t>& a, std::int64_t symbol,
                                 const Rational& tau) {
    for (const SymbolOccurrences& occ : group_occurrences(a))
        if (occ.symbol == symbol) return compute_segments(occ, tau, a.size());
    return {};
}

std::vector<std::int64_t> random_array(std::mt19937_64& rng, size_t n, std::int64_t alphabet) {
    std::vector<std::int64_t> a(n);
    for (auto& v : a) v = std::int64_t(rng() % uint64_t(alphabet)) + 1;
    return a;
}

}  // namespace

TEST_CASE("group_occurrences splits the running example") {
    auto groups = group_occurrences(kRunning);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].symbol == 1);
    CHECK(groups[0].positions == std::vector<uint64_t>{1, 6, 7});
    CHECK(groups[1].symbol == 2);
    CHECK(groups[1].positions == std::vector<uint64_t>{3});
    CHECK(groups[2].symbol == 3);
    CHECK(groups[2].positions == std::vector<uint64_t>{2, 4, 5});
}

TEST_CASE("group_occurrences partitions every position") {
    std::mt19937_64 rng(5);
    std::vector<std::int64_t> single{5};
    auto g = group_occurrences(single);
    REQUIRE(g.size() == 1);
    CHECK(g[0].positions == std::vector<uint64_t>{1});

    for (int iter = 0; iter < 20; ++iter) {
        auto a = random_array(rng, 1 + rng() % 200, 5);
        std::vector<uint8_t> seen(a.size() + 1, 0);
        for (const auto& occ : group_occurrences(a))
            for (uint64_t p : occ.positions) {
                CHECK(a[p - 1] == occ.symbol);
                CHECK(!seen[p]);
                seen[p] = 1;
            }
        for (size_t p = 1; p <= a.size(); ++p) CHECK(seen[p]);
    }
}

TEST_CASE("running example cover intervals") {
    Rational half{1, 2};
    CHECK(segments_of(kRunning, 1, half) ==
          std::vector<Segment>{{1, 1, 1}, {5, 7, 1}});
    CHECK(segments_of(kRunning, 2, half) == std::vector<Segment>{{3, 3, 2}});
    CHECK(segments_of(kRunning, 3, half) == std::vector<Segment>{{1, 6, 3}});
}

TEST_CASE("brute segments on the running example") {
    Rational half{1, 2};
    CHECK(brute_segments(kRunning, half, 3) == std::vector<Segment>{{1, 6, 3}});
    CHECK(brute_segments(kRunning, half, 9).empty());  // absent symbol

    std::vector<std::int64_t> all_equal(10, 4);
    CHECK(brute_segments(all_equal, Rational{9, 10}, 4) ==
          std::vector<Segment>{{1, 10, 4}});
}

TEST_CASE("single occurrence covers the window hull") {
    // a lone occurrence at k is covered by windows of length < 1/tau around
    // it: the hull is [k-ceil(1/tau)+2, k+ceil(1/tau)-2], clipped
    for (auto tau : {Rational{1, 2}, Rational{1, 3}, Rational{1, 5}, Rational{2, 7}}) {
        uint64_t n = 40, k = 20;
        std::vector<std::int64_t> a(n, 1);
        a[k - 1] = 2;
        auto expect = brute_segments(a, tau, 2);
        SymbolOccurrences occ{2, {k}};
        CHECK(compute_segments(occ, tau, n) == expect);

        uint64_t r = ceil_div_u64(tau.den, tau.num);
        REQUIRE(expect.size() == 1);
        CHECK(expect[0].lo == k - r + 2);
        CHECK(expect[0].hi == k + r - 2);
    }
}

TEST_CASE("compute_segments equals brute force") {
    std::mt19937_64 rng(97);
    const Rational taus[] = {{1, 2}, {1, 3}, {1, 5}, {2, 7}, {1, 16}};
    int instances = 0;
    while (instances < 220) {
        size_t n = 1 + rng() % 300;
        std::int64_t alpha;
        switch (instances % 4) {
            case 0: alpha = 2; break;
            case 1: alpha = 3; break;
            case 2: alpha = 10; break;
            default: alpha = std::int64_t(n); break;
        }
        auto a = random_array(rng, n, alpha);
        const Rational& tau = taus[instances % 5];
        for (const SymbolOccurrences& occ : group_occurrences(a)) {
            auto fast = compute_segments(occ, tau, n);
            auto brute = brute_segments(a, tau, occ.symbol);
            REQUIRE_MESSAGE(fast == brute, "n=", n, " alpha=", alpha, " tau=", tau.str(),
                            " symbol=", occ.symbol);
        }
        ++instances;
    }
}

TEST_CASE("cover length and overlap bounds") {
    std::mt19937_64 rng(131);
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 50 + rng() % 250;
        auto a = random_array(rng, n, iter % 2 ? 4 : 12);
        Rational tau = iter % 3 == 0 ? Rational{1, 2} : (iter % 3 == 1 ? Rational{1, 3}
                                                                       : Rational{1, 5});
        uint64_t total_cover = 0;
        std::vector<uint32_t> covered_by(n + 1, 0);
        for (const auto& occ : group_occurrences(a)) {
            uint64_t prev_hi = 0;
            bool first = true;
            for (const Segment& s : compute_segments(occ, tau, n)) {
                total_cover += s.length();
                for (uint64_t k = s.lo; k <= s.hi; ++k) ++covered_by[k];
                if (!first) CHECK(s.lo > prev_hi + 1);  // gap of at least one position
                prev_hi = s.hi;
                first = false;
            }
        }
        // per-occurrence 1s bound: total cover <= 2*ceil(1/tau)*n
        CHECK(total_cover <= 2 * ceil_div_u64(tau.den, tau.num) * n);
        // distinct symbols covering one position: <= 2*log_{1+tau} n
        double bound = 2.0 * std::log(double(n)) /
                       std::log1p(double(tau.num) / double(tau.den));
        for (uint64_t k = 1; k <= n; ++k) CHECK(double(covered_by[k]) <= bound);
    }
}

TEST_CASE("degenerate thresholds rejected") {
    SymbolOccurrences occ{1, {1}};
    CHECK_THROWS_AS(compute_segments(occ, Rational{1, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(compute_segments(occ, Rational{0, 2}, 5), std::invalid_argument);
    CHECK_THROWS_AS(compute_segments(occ, Rational{5, 4}, 5), std::invalid_argument);
}
