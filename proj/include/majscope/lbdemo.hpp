#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "majscope/rational.hpp"

namespace majscope {

/* Counting-query callback: number of distinct tau-majorities in A[lo,hi].
   The decoders see nothing else of the array. */
using CountingFn = std::function<uint64_t(uint64_t lo, uint64_t hi)>;

/* An array encoding a sequence of permutations of [3k], recoverable through
   counting queries alone at tau = 1/(2k+2). Each permutation occupies
   36k positions laid out as 9 rows of (k base values, 2k sentinels,
   k permutation values); the sentinels are the 2k values below zero. */
struct PermutationCode {
    uint64_t k = 0;
    uint64_t m = 0;
    Rational tau{1, 4};
    std::vector<std::int64_t> array;  // length 36*k*m
};

PermutationCode encode_perms(const std::vector<std::vector<std::int64_t>>& perms);

/* Recover all m permutations issuing only counting queries; the decoder
   sees k, m and the counter, never the array. The optional trace sink
   observes every (lo, hi, count) in issue order. */
std::vector<std::vector<std::int64_t>> decode_perms(
    uint64_t k, uint64_t m, const CountingFn& counter,
    const std::function<void(uint64_t, uint64_t, uint64_t)>& trace = nullptr);

/* Bitmap lower bound: B[i]=1 becomes four equal values, B[i]=0 four distinct
   ones; a tau >= 1/4 counting query per block reads the bit back. */
std::vector<std::int64_t> encode_bitmap(const std::vector<uint8_t>& bits);
std::vector<uint8_t> decode_bitmap(uint64_t num_bits, const CountingFn& counter);

}  // namespace majscope
