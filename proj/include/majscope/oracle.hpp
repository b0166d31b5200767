#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "majscope/rational.hpp"

namespace majscope {

/* Ground truth by direct scan: every distinct value occurring more than
   tau*(j-i+1) times in A[i,j], with its count and sorted positions. */
struct OracleAnswer {
    struct Entry {
        std::int64_t value;
        uint64_t count;
        std::vector<uint64_t> positions;
    };
    std::vector<Entry> majorities;  // sorted by value
};

OracleAnswer oracle_query(std::span<const std::int64_t> a, uint64_t i, uint64_t j,
                          const Rational& tau_prime);

uint64_t oracle_count(std::span<const std::int64_t> a, uint64_t i, uint64_t j,
                      const Rational& tau_prime);

/* Size cap for exhaustive all-ranges sweeps in test utilities; the
   MAJSCOPE_ORACLE_CAP environment variable overrides the default of 4096. */
uint64_t oracle_cap();

}  // namespace majscope
