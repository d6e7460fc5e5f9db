#pragma once

#include "stsrank/field.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stsrank {

using Point = std::uint32_t;
using Block = std::array<Point, 3>;

/// A set of 3-subsets of {0, ..., v-1}. Blocks are strictly increasing triples
/// and the block list is strictly increasing, so equality is syntactic.
class TripleSystem {
public:
    TripleSystem() = default;

    /// Rejects unsorted or duplicated input with DomainError.
    TripleSystem(Point v, std::vector<Block> blocks);

    /// Sorts each block and the list; still rejects duplicates and repeated points.
    static TripleSystem normalized(Point v, std::vector<Block> blocks);

    Point points() const noexcept { return v_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    bool contains(const Block& b) const;
    /// True iff every block of this system is a block of `other` (same point count).
    bool subset_of(const TripleSystem& other) const;

    /// Image under the point map x -> perm[x].
    TripleSystem relabeled(std::span<const Point> perm) const;

    auto operator<=>(const TripleSystem&) const = default;

private:
    Point v_ = 0;
    std::vector<Block> blocks_;
};

struct PairCoverage {
    Point a = 0;
    Point b = 0;
    unsigned count = 0;
};

struct StsCertificate {
    bool isSts = false;
    std::optional<PairCoverage> failingPair; // lexicographically first pair not covered exactly once
};

StsCertificate validate_sts(const TripleSystem& d);

/// |blocks| x v incidence matrix over GF(p). Throws DomainError for an empty block list.
FieldMatrix incidence_matrix(const TripleSystem& d, int p);

/// p-rank of an STS. Throws DomainError when d is not an STS.
std::size_t sts_rank(const TripleSystem& d, int p);

/// A small library of named systems used by tests, docs and the CLI.
namespace classic {
TripleSystem fano();            // PG(2,2), lines {x, y, x^y} on nonzero vectors x-1
TripleSystem affine_plane_3();  // AG(2,3) on points 3a+b
TripleSystem projective_space(unsigned dim);  // PG(dim,2) point-line design, 2^(dim+1)-1 points
TripleSystem affine_space(unsigned dim);      // AG(dim,3) point-line design, 3^dim points
} // namespace classic

} // namespace stsrank
