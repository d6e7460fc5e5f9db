#pragma once

// Exact-cover search for every STS whose blocks are drawn from a given triple
// system. Knows nothing about codes or geometry.

#include "stsrank/config.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/kernels.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stsrank {

/// All sub-collections of d's blocks covering every pair of points exactly
/// once, emitted in lex order of their (sorted) block index sets. ResourceError
/// if d has more than limits.oracleBlockCap blocks. Returns the count.
std::uint64_t exact_cover_sts(const TripleSystem& d, const std::function<void(const TripleSystem&)>& sink,
                              const Limits& limits = {}, Exec exec = Exec::Parallel);

/// Index sets only, sorted.
std::vector<std::vector<std::uint32_t>> exact_cover_solutions(const TripleSystem& d, const Limits& limits = {},
                                                              Exec exec = Exec::Parallel);

} // namespace stsrank
