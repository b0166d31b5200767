#include "majscope/oracle.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace majscope {

OracleAnswer oracle_query(std::span<const std::int64_t> a, uint64_t i, uint64_t j,
                          const Rational& tau_prime) {
    if (i < 1 || j > a.size() || i > j) throw std::out_of_range("range out of bounds");
    if (!tau_prime.valid_threshold())
        throw std::invalid_argument("tau' must satisfy 0 < tau' < 1");
    std::map<std::int64_t, std::vector<uint64_t>> occ;
    for (uint64_t k = i; k <= j; ++k) occ[a[k - 1]].push_back(k);
    OracleAnswer out;
    uint64_t len = j - i + 1;
    for (auto& [value, positions] : occ)
        if (count_exceeds(positions.size(), len, tau_prime))
            out.majorities.push_back({value, positions.size(), std::move(positions)});
    return out;
}

uint64_t oracle_count(std::span<const std::int64_t> a, uint64_t i, uint64_t j,
                      const Rational& tau_prime) {
    return oracle_query(a, i, j, tau_prime).majorities.size();
}

uint64_t oracle_cap() {
    static uint64_t cap = [] {
        if (const char* env = std::getenv("MAJSCOPE_ORACLE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return uint64_t(v);
        }
        return uint64_t(4096);
    }();
    return cap;
}

}  // namespace majscope
