#include <doctest.h>

#include <cmath>
#include <random>

#include "majscope/runbv.hpp"

using namespace majscope;

namespace {

std::vector<uint8_t> expand(const std::vector<Run>& runs, uint64_t n) {
    std::vector<uint8_t> bits(n, 0);
    for (const Run& r : runs)
        for (uint64_t k = r.lo; k <= r.hi; ++k) bits[k - 1] = 1;
    return bits;
}

uint64_t scan_rank(const std::vector<uint8_t>& bits, uint64_t i) {
    uint64_t c = 0;
    for (uint64_t k = 0; k < i; ++k) c += bits[k];
    return c;
}

/* random disjoint runs of length >= minlen with gaps >= 1 */
std::vector<Run> random_runs(std::mt19937_64& rng, uint64_t n, uint64_t minlen) {
    std::vector<Run> runs;
    uint64_t at = 1 + rng() % 3;
    while (at + minlen - 1 <= n) {
        uint64_t len = minlen + rng() % (minlen + 4);
        if (at + len - 1 > n) break;
        runs.push_back({at, at + len - 1});
        at += len + 1 + rng() % 5;
    }
    return runs;
}

}  // namespace

TEST_CASE("chunk layout of a single interior run") {
    // <0 0 0 0 1 1 1> with b=2: chunks 00 / 00 / 11 / 1(pad)
    RunBitvec v = RunBitvec::build({{5, 7}}, 7, 2);
    CHECK(v.full_chunks().size() == 4);
    CHECK(v.full_chunks().get(3));
    CHECK(v.full_chunks().ones() == 1);
    CHECK(v.mixed_chunks().get(4));
    CHECK(v.mixed_chunks().ones() == 1);
    CHECK(v.p10(1) == 1);
    CHECK(v.p01(1) == 2);  // padded chunk <1 0> ends with the pad zero

    auto bits = expand({{5, 7}}, 7);
    for (uint64_t i = 0; i <= 7; ++i) CHECK(v.rank(i) == scan_rank(bits, i));
}

TEST_CASE("fully aligned run needs no mixed chunks") {
    RunBitvec v = RunBitvec::build({{1, 4}}, 4, 2);
    CHECK(v.full_chunks().ones() == 2);
    CHECK(v.mixed_chunks().ones() == 0);
    CHECK(v.rank(4) == 4);
}

TEST_CASE("level-0 style example accepted when chunks stay well-formed") {
    // <1 0 1 0 0 0 0> with b=2: A1=<0 0 0 0>, A2=<1 1 0 0>, p10=<1 1>, p01=<2 2>
    RunBitvec v = RunBitvec::build({{1, 1}, {3, 3}}, 7, 2);
    CHECK(v.full_chunks().ones() == 0);
    CHECK(v.mixed_chunks().get(1));
    CHECK(v.mixed_chunks().get(2));
    CHECK(v.mixed_chunks().ones() == 2);
    CHECK(v.p10(1) == 1);
    CHECK(v.p01(1) == 2);
    CHECK(v.p10(2) == 1);
    CHECK(v.p01(2) == 2);

    CHECK(v.rank(3) == 2);  // prefix <1 0 1>
    CHECK(v.rank(0) == 0);
}

TEST_CASE("runs too short for the chunk get rejected") {
    CHECK_THROWS_AS(RunBitvec::build({{2, 3}, {5, 5}}, 8, 4), std::invalid_argument);
    CHECK_THROWS_AS(RunBitvec::build({{3, 4}}, 8, 8), std::invalid_argument);
}

TEST_CASE("run rank equals a linear scan") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 120; ++iter) {
        uint64_t b = 1 + rng() % 9;
        uint64_t n = b + rng() % 600;
        auto runs = random_runs(rng, n, b);
        RunBitvec v = RunBitvec::build(runs, n, b);
        auto bits = expand(runs, n);
        for (uint64_t i = 0; i <= n; ++i) REQUIRE(v.rank(i) == scan_rank(bits, i));
    }
}

TEST_CASE("covered is the full-coverage test") {
    RunBitvec v = RunBitvec::build({{1, 6}}, 7, 3);
    CHECK(v.covered(2, 5));
    CHECK(v.covered(1, 6));
    CHECK(!v.covered(6, 7));
    CHECK(!v.covered(7, 7));
    CHECK(v.covered(3, 3));
    // a leading zero must not slip through
    RunBitvec u = RunBitvec::build({{2, 7}}, 7, 3);
    CHECK(!u.covered(1, 4));
    CHECK(u.covered(2, 7));
}

TEST_CASE("covered is monotone under shrinking") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 20; ++iter) {
        uint64_t b = 2 + rng() % 4;
        uint64_t n = 30 + rng() % 80;
        auto runs = random_runs(rng, n, b);
        RunBitvec v = RunBitvec::build(runs, n, b);
        for (int t = 0; t < 50; ++t) {
            uint64_t i = 1 + rng() % n;
            uint64_t j = i + rng() % (n - i + 1);
            if (v.covered(i, j)) {
                uint64_t i2 = i + (j - i) / 3, j2 = j - (j - i) / 4;
                if (i2 <= j2) CHECK(v.covered(i2, j2));
            }
        }
    }
}

TEST_CASE("sparse run bitvec matches the scan oracle") {
    SparseRunBitvec e = SparseRunBitvec::build({}, 9);
    for (uint64_t i = 0; i <= 9; ++i) CHECK(e.rank(i) == 0);

    SparseRunBitvec v = SparseRunBitvec::build({{1, 1}, {3, 3}, {5, 7}}, 7);
    CHECK(v.rank(7) == 5);
    CHECK(v.covered(5, 7));
    CHECK(!v.covered(4, 7));

    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 120; ++iter) {
        uint64_t n = 1 + rng() % 500;
        auto runs = random_runs(rng, n, 1);
        SparseRunBitvec u = SparseRunBitvec::build(runs, n);
        auto bits = expand(runs, n);
        for (uint64_t i = 0; i <= n; ++i) REQUIRE(u.rank(i) == scan_rank(bits, i));
    }
}

TEST_CASE("space stays within the chunked budget") {
    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 40; ++iter) {
        uint64_t b = 2 + rng() % 16;
        uint64_t n = 100 + rng() % 2000;
        auto runs = random_runs(rng, n, b);
        RunBitvec v = RunBitvec::build(runs, n, b);
        double lgb = std::log2(double(b)) + 1.0;
        double budget = 2.0 * (double(n) / double(b) + 64.0) +
                        4.0 * double(runs.size() + 1) * (lgb + 2.0) + 512.0;
        CHECK(double(v.bit_size()) <= budget);
    }
}

TEST_CASE("run bitvec serialization round trips") {
    std::mt19937_64 rng(59);
    auto runs = random_runs(rng, 300, 4);
    RunBitvec v = RunBitvec::build(runs, 300, 4);
    ByteWriter w;
    v.serialize(w);
    auto bytes = w.take();
    ByteReader r(bytes.data(), bytes.size());
    RunBitvec u = RunBitvec::deserialize(r);
    for (uint64_t i = 0; i <= 300; ++i) REQUIRE(u.rank(i) == v.rank(i));

    SparseRunBitvec sv = SparseRunBitvec::build(runs, 300);
    ByteWriter w2;
    sv.serialize(w2);
    auto bytes2 = w2.take();
    ByteReader r2(bytes2.data(), bytes2.size());
    SparseRunBitvec su = SparseRunBitvec::deserialize(r2);
    for (uint64_t i = 0; i <= 300; ++i) REQUIRE(su.rank(i) == sv.rank(i));
}
