#pragma once

#include <cstdint>
#include <vector>

#include "majscope/encoding.hpp"

namespace majscope {

/* Piece index over the encoding: for every level l in
   [ceil(lg 1/tau), ceil(lg n)] the array is tiled twice by pieces of length
   2^l (aligned, and shifted by 2^(l-1)), and each piece stores the ids of the
   coalesced pairs that can certify a majority for a long range inside it.
   A per-position id array serves ranges too short for any piece level. */
class PieceIndex {
public:
    PieceIndex() = default;

    static PieceIndex build(const MajorityEncoding& e, const CoalescedLayout& layout);

    uint32_t level_min() const { return m_level_min; }
    uint32_t level_max() const { return m_level_max; }
    bool has_piece_levels() const { return m_level_min <= m_level_max; }

    uint32_t pos_id(uint64_t k) const { return uint32_t(m_pos_ids.get(k - 1)); }

    /* id list of the piece of the given level containing [i,j]; aligned
       tiling first, the shifted one when the range crosses an aligned
       boundary */
    const std::vector<uint32_t>& piece_ids(uint32_t level, uint64_t i, uint64_t j) const;

    const std::vector<std::vector<uint32_t>>& aligned_lists(uint32_t level) const {
        return m_levels[level - m_level_min].aligned;
    }
    const std::vector<std::vector<uint32_t>>& shifted_lists(uint32_t level) const {
        return m_levels[level - m_level_min].shifted;
    }

    void serialize(ByteWriter& w, bool gamma_ids = false) const;
    static PieceIndex deserialize(ByteReader& r);

    uint64_t bit_size(bool gamma_ids = false) const;

private:
    struct Level {
        std::vector<std::vector<uint32_t>> aligned;
        std::vector<std::vector<uint32_t>> shifted;  // shifted[0] clipped to [1, 2^(l-1)]
    };

    uint64_t m_n = 0;
    uint32_t m_pair_count = 0;
    uint32_t m_level_min = 0;
    uint32_t m_level_max = 0;
    std::vector<Level> m_levels;
    PackedInts m_pos_ids;
};

/* Piece-pruned query: identical answers to MajorityEncoding::query, probing
   at most the piece's id list (long ranges) or the deduplicated per-position
   ids (short ranges). */
QueryAnswer query_fast(const MajorityEncoding& e, const PieceIndex& pi, uint64_t i, uint64_t j,
                       const Rational& tau_prime);

/* Encoding stream with the piece index appended as a tagged optional
   section; deserialization accepts streams with or without it. */
std::vector<uint8_t> serialize_with_accel(const MajorityEncoding& e, const PieceIndex& pi,
                                          bool gamma_ids = false);

struct LoadedEncoding {
    MajorityEncoding encoding;
    std::optional<PieceIndex> accel;
};

LoadedEncoding load_encoding(std::span<const uint8_t> bytes);

}  // namespace majscope
