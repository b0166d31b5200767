#include <doctest.h>

#include "majscope/oracle.hpp"

using namespace majscope;

namespace {
const std::vector<std::int64_t> kRunning{1, 3, 2, 3, 3, 1, 1};
}

TEST_CASE("oracle counts the running example") {
    OracleAnswer a = oracle_query(kRunning, 2, 5, Rational{1, 2});
    REQUIRE(a.majorities.size() == 1);
    CHECK(a.majorities[0].value == 3);
    CHECK(a.majorities[0].count == 3);
    CHECK(a.majorities[0].positions == std::vector<uint64_t>{2, 4, 5});

    CHECK(oracle_count(kRunning, 1, 7, Rational{1, 2}) == 0);
    for (uint64_t i = 1; i <= 7; ++i) {
        OracleAnswer one = oracle_query(kRunning, i, i, Rational{1, 2});
        REQUIRE(one.majorities.size() == 1);
        CHECK(one.majorities[0].value == kRunning[i - 1]);
        CHECK(one.majorities[0].positions == std::vector<uint64_t>{i});
    }
}

TEST_CASE("oracle validates its inputs") {
    CHECK_THROWS_AS(oracle_query(kRunning, 0, 3, Rational{1, 2}), std::out_of_range);
    CHECK_THROWS_AS(oracle_query(kRunning, 3, 9, Rational{1, 2}), std::out_of_range);
    CHECK_THROWS_AS(oracle_query(kRunning, 1, 3, Rational{1, 1}), std::invalid_argument);
}

TEST_CASE("independent per-value cross check") {
    // count occurrences of each value by scanning its position list instead
    const std::vector<std::int64_t> a{4, 4, 1, 4, 2, 2, 2, 2, 9};
    Rational third{1, 3};
    for (uint64_t i = 1; i <= a.size(); ++i)
        for (uint64_t j = i; j <= a.size(); ++j) {
            OracleAnswer ans = oracle_query(a, i, j, third);
            for (std::int64_t v : {std::int64_t(1), std::int64_t(2), std::int64_t(4),
                                   std::int64_t(9)}) {
                uint64_t c = 0;
                for (uint64_t k = i; k <= j; ++k) c += a[k - 1] == v;
                bool is_maj = count_exceeds(c, j - i + 1, third);
                bool listed = false;
                for (const auto& m : ans.majorities)
                    if (m.value == v) {
                        listed = true;
                        CHECK(m.count == c);
                    }
                CHECK(is_maj == listed);
            }
        }
}

TEST_CASE("oracle cap has a default") { CHECK(oracle_cap() >= 1); }
