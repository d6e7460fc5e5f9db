#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace stsrank {

/// Desk-scale caps. Every resource-limited operation takes these explicitly;
/// the defaults are the documented ones.
struct Limits {
    unsigned dualCorankCap = 24;        // dual enumeration visits at most 2^this words
    std::size_t oracleBlockCap = 200;    // exact-cover oracle input size
    std::uint32_t canonVertexCap = 15;   // canonical_form / automorphism_group
    std::uint32_t weight3VertexCap = 255;
    std::uint64_t streamRecipeCap = 10'000'000;
    bool longMode = false;               // unlocks STS(13) enumeration and v <= 27 canonical forms
};

/// Reads `key = value` lines (# comments allowed) and overrides the matching caps.
/// Recognised keys: dual_corank_cap, oracle_block_cap, canon_v_cap,
/// weight3_v_cap, stream_recipe_cap, long_mode.
Limits load_limits(const std::filesystem::path& path, Limits base = {});

} // namespace stsrank
