#pragma once

// The weight-3 design D of C_{n,t}, the column partition V_0 / G_1..G_M,
// the quotient geometry PG(n-1-t,2) or AG(n-t,3), block classification and
// the group-divisible structure of D.

#include "stsrank/config.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/field.hpp"
#include "stsrank/kernels.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace stsrank {

/// Columns of H_{n,t} split into the zero columns V_0 (binary only) and the
/// M groups of identical nonzero columns. Group g corresponds to geometry point g.
struct GroupPartition {
    std::vector<Point> zeroSet;
    std::vector<std::vector<Point>> groups;
    std::vector<std::uint32_t> groupPoint; // group index -> geometry point index

    static constexpr std::int64_t kZero = -1;
    /// Group index of each column, or kZero for columns in V_0.
    std::vector<std::int64_t> groupOf;
};

enum class GeometryKind { Projective2, Affine3 };

struct Geometry {
    GeometryKind kind = GeometryKind::Projective2;
    unsigned dimension = 0;
    std::vector<std::vector<std::uint8_t>> points; // coordinates, lexicographic order
    std::vector<std::array<std::uint32_t, 3>> lines; // sorted triples of point indices, sorted

    std::size_t line_count() const noexcept { return lines.size(); }

    /// Third point on the line through two distinct points.
    std::uint32_t third_point(std::uint32_t a, std::uint32_t b) const;
    /// Index of the line through a, b (distinct).
    std::size_t line_through(std::uint32_t a, std::uint32_t b) const;

    /// Dense lookup for line_through, filled by geometry_of.
    std::vector<std::uint32_t> lineIndex; // points.size()^2, UINT32_MAX on the diagonal
};

FieldMatrix parity_check_for(const CodeSpec& spec);

GroupPartition column_partition(const CodeSpec& spec);

/// PG(n-1-t, 2) for binary specs, AG(n-t, 3) for ternary specs.
Geometry geometry_of(const CodeSpec& spec);

namespace block_class {
struct Interior {
    bool operator==(const Interior&) const = default;
};
/// Binary: {x, y, y'} with x in V_0 and y, y' in group `group`.
/// Ternary: all three points in `group` (zeroPoint empty).
struct Mixed {
    std::uint32_t group = 0;
    std::optional<Point> zeroPoint;
    bool operator==(const Mixed&) const = default;
};
/// One point in each of three groups whose geometry points form `line`.
struct Transversal {
    std::size_t line = 0;
    bool operator==(const Transversal&) const = default;
};
} // namespace block_class

using BlockClass = std::variant<block_class::Interior, block_class::Mixed, block_class::Transversal>;

/// Throws DomainError if b does not have one of the shapes allowed in D.
BlockClass classify_block(const GroupPartition& part, const Geometry& geo, const Block& b);

/// Supports of the weight-3 codewords (all-ones support in the ternary case),
/// found by a syndrome scan over all C(v,3) triples. Results are cached per spec.
std::shared_ptr<const TripleSystem> weight3_design(const CodeSpec& spec, const Limits& limits = {},
                                                   Exec exec = Exec::Parallel);

/// D assembled from the three block families predicted by the block
/// classification (interior, mixed, transversal), without any syndrome scan.
TripleSystem constructive_weight3_design(const CodeSpec& spec, const Limits& limits = {});

struct GddReport {
    std::uint64_t groupCount = 0;
    std::uint64_t groupSize = 0;
    std::int64_t lambdaSameGroup = -1;   // -1 when pair counts are not constant
    std::int64_t lambdaCrossGroup = -1;
    // Binary only: the blocks inside V_0 form a 2-(T,3,lambda) design.
    std::optional<std::array<std::int64_t, 3>> interiorDesignParams;
    std::int64_t mixedPerSamePair = -1;  // binary only
    std::int64_t transversalPerLine = -1;
    std::uint64_t interiorBlocks = 0;
    std::uint64_t mixedBlocks = 0;
    std::uint64_t transversalBlocks = 0;
    bool passed = false;
};

GddReport verify_gdd(const CodeSpec& spec, const Limits& limits = {});

} // namespace stsrank
