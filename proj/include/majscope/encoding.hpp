#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "majscope/bitvec.hpp"
#include "majscope/coalesce.hpp"
#include "majscope/rational.hpp"
#include "majscope/runbv.hpp"
#include "majscope/segments.hpp"

namespace majscope {

/* One coalesced cover bitmap paired with its occurrence bitmap. Level 0
   covers use the sparse run representation (their runs can be shorter than
   the chunk size), higher levels the chunked one. The occurrence bitmap M
   lives over the cover's total run length, one bit per covered position,
   set where the array held the hosting segment's symbol. */
struct CoalescedPair {
    uint32_t id = 0;
    uint32_t level = 0;
    std::variant<SparseRunBitvec, RunBitvec> cover;
    SparseBitvec occ;

    uint64_t cover_rank(uint64_t i) const {
        return std::visit([&](const auto& c) { return c.rank(i); }, cover);
    }
    bool cover_covered(uint64_t i, uint64_t j) const {
        return std::visit([&](const auto& c) { return c.covered(i, j); }, cover);
    }
    uint64_t cover_ones() const {
        return std::visit([&](const auto& c) { return c.ones(); }, cover);
    }
    uint64_t cover_runs() const {
        return std::visit([&](const auto& c) { return c.run_count(); }, cover);
    }
    bool chunked() const { return cover.index() == 1; }
};

/* One confirmed majority: the pair that certified it, the mapped interval in
   its occurrence bitmap, and the occurrence count. Values are never exposed,
   only positions (via report). */
struct Hit {
    uint32_t pair_id = 0;
    uint64_t mapped_lo = 0;  // [mapped_lo, mapped_hi] inside the pair's M
    uint64_t mapped_hi = 0;
    uint64_t count = 0;
    uint64_t base = 0;         // i - i', added back to M positions
    uint64_t ones_before = 0;  // rank(M, mapped_lo - 1)
};

struct QueryAnswer {
    std::vector<Hit> hits;  // ascending pair id
    uint64_t probes = 0;    // pairs tested, for instrumentation
};

class MajorityEncoding {
public:
    MajorityEncoding() = default;

    static MajorityEncoding build(std::span<const std::int64_t> a, const Rational& tau);

    /* build that also hands back the segment layout, which the accelerator
       construction needs (per-position bitmap ids live there) */
    static MajorityEncoding build_with_layout(std::span<const std::int64_t> a,
                                              const Rational& tau, CoalescedLayout& layout_out);

    QueryAnswer query(uint64_t i, uint64_t j, const Rational& tau_prime) const;

    /* t-th occurrence position of a hit's majority inside the queried range,
       1 <= t <= hit.count */
    uint64_t report(const Hit& hit, uint64_t t) const;

    uint64_t size() const { return m_n; }
    const Rational& tau() const { return m_tau; }
    const std::vector<CoalescedPair>& pairs() const { return m_pairs; }

    /* Lemma 3 on one pair; query_fast probes selected pairs through this */
    std::optional<Hit> probe_pair(const CoalescedPair& p, uint64_t i, uint64_t j,
                                  const Rational& tau_prime) const;

    void validate_range(uint64_t i, uint64_t j) const;
    void validate_tau_prime(const Rational& tau_prime) const;

    std::vector<uint8_t> serialize() const;
    static MajorityEncoding deserialize(std::span<const uint8_t> bytes);
    static MajorityEncoding deserialize(ByteReader& r);  // leaves trailing sections unread

    /* serialized payload size in bits, directories excluded */
    uint64_t bit_size() const;

private:
    uint64_t m_n = 0;
    Rational m_tau{1, 2};
    std::vector<CoalescedPair> m_pairs;

    friend struct EncodingCodec;
};

/* The multi-threshold wrapper: one encoding per tau'' = 1/2, 1/4, ...,
   1/2^ceil(lg 1/tau); a tau' query routes to the structure whose threshold
   is the largest tau'' <= tau'. */
class MultiEncoding {
public:
    MultiEncoding() = default;

    static MultiEncoding build(std::span<const std::int64_t> a, const Rational& tau);

    QueryAnswer query(uint64_t i, uint64_t j, const Rational& tau_prime) const;
    const MajorityEncoding& structure_for(const Rational& tau_prime) const;

    const std::vector<MajorityEncoding>& structures() const { return m_structures; }
    const Rational& tau() const { return m_tau; }

    std::vector<uint8_t> serialize() const;
    static MultiEncoding deserialize(std::span<const uint8_t> bytes);

private:
    Rational m_tau{1, 2};
    std::vector<MajorityEncoding> m_structures;  // index l holds tau'' = 1/2^(l+1)
};

/* ceil(lg(1/r)) for a rational 0 < r < 1 */
uint32_t ceil_log2_inverse(const Rational& r);

}  // namespace majscope
