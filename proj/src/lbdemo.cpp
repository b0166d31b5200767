#include "majscope/lbdemo.hpp"

#include <algorithm>
#include <stdexcept>

namespace majscope {

PermutationCode encode_perms(const std::vector<std::vector<std::int64_t>>& perms) {
    if (perms.empty()) throw std::invalid_argument("need at least one permutation");
    if (perms[0].size() % 3 != 0 || perms[0].empty())
        throw std::invalid_argument("permutation size must be a positive multiple of 3");
    uint64_t k = perms[0].size() / 3;

    PermutationCode code;
    code.k = k;
    code.m = perms.size();
    code.tau = Rational{1, 2 * k + 2};
    code.array.reserve(36 * k * code.m);

    for (const auto& perm : perms) {
        if (perm.size() != 3 * k) throw std::invalid_argument("permutation sizes differ");
        std::vector<uint8_t> seen(3 * k + 1, 0);
        for (std::int64_t v : perm) {
            if (v < 1 || v > std::int64_t(3 * k) || seen[v])
                throw std::invalid_argument("input is not a permutation of [3k]");
            seen[v] = 1;
        }
        for (uint64_t third = 0; third < 3; ++third) {
            for (uint64_t row = 0; row < 3; ++row) {
                for (uint64_t v = 1; v <= k; ++v)
                    code.array.push_back(std::int64_t(row * k + v));
                for (uint64_t v = 1; v <= 2 * k; ++v) code.array.push_back(-std::int64_t(v));
                for (uint64_t g = 1; g <= k; ++g)
                    code.array.push_back(perm[third * k + g - 1]);
            }
        }
    }
    return code;
}

std::vector<std::vector<std::int64_t>> decode_perms(
    uint64_t k, uint64_t m, const CountingFn& counter,
    const std::function<void(uint64_t, uint64_t, uint64_t)>& trace) {
    if (k < 1 || m < 1) throw std::invalid_argument("k and m must be positive");

    auto count = [&](uint64_t lo, uint64_t hi) {
        uint64_t c = counter(lo, hi);
        if (trace) trace(lo, hi, c);
        return c;
    };

    std::vector<std::vector<std::int64_t>> perms;
    perms.reserve(m);
    for (uint64_t pi = 0; pi < m; ++pi) {
        uint64_t block = 36 * k * pi;
        std::vector<std::int64_t> perm(3 * k, 0);

        for (uint64_t third = 0; third < 3; ++third) {
            std::vector<std::int64_t> known;  // x values of this third found so far
            for (uint64_t g = 1; g <= k; ++g) {
                // The row [l, 3k+g] doubles exactly the x_1..x_g lying in the
                // row's base suffix {bk+l..bk+k}; counts of already-known x
                // values are subtracted, leaving an indicator for x_g.
                bool resolved = false;
                for (uint64_t b = 0; b < 3 && !resolved; ++b) {
                    uint64_t row_off = block + 4 * k * (3 * third + b);
                    auto indicator = [&](uint64_t l) {
                        uint64_t cnt = count(row_off + l, row_off + 3 * k + g);
                        uint64_t sub = 0;
                        for (std::int64_t x : known)
                            if (x > std::int64_t(b * k + l - 1) && x <= std::int64_t(b * k + k))
                                ++sub;
                        return cnt - sub;
                    };
                    if (indicator(1) != 1) continue;
                    uint64_t best = 1;
                    for (uint64_t l = 2; l <= k; ++l) {
                        if (indicator(l) == 1)
                            best = l;
                        else
                            break;
                    }
                    perm[third * k + g - 1] = std::int64_t(b * k + best);
                    known.push_back(perm[third * k + g - 1]);
                    resolved = true;
                }
                if (!resolved)
                    throw std::runtime_error("counting queries are inconsistent with the layout");
            }
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

std::vector<std::int64_t> encode_bitmap(const std::vector<uint8_t>& bits) {
    std::vector<std::int64_t> a;
    a.reserve(4 * bits.size());
    for (uint8_t b : bits) {
        if (b) {
            a.insert(a.end(), {1, 1, 1, 1});
        } else {
            a.insert(a.end(), {1, 2, 3, 4});
        }
    }
    return a;
}

std::vector<uint8_t> decode_bitmap(uint64_t num_bits, const CountingFn& counter) {
    std::vector<uint8_t> bits(num_bits, 0);
    for (uint64_t i = 1; i <= num_bits; ++i)
        bits[i - 1] = counter(4 * (i - 1) + 1, 4 * i) > 0 ? 1 : 0;
    return bits;
}

}  // namespace majscope
