#pragma once

// Recipes: the component data from which a system inside the weight-3 design
// is assembled; composition, decomposition and enumeration of all recipes.
//
// Local indices: point j of a group (or of V_0) is the j-th smallest column in
// it. On a line {p0 < p1 < p2} of the geometry, the Latin square has rows on the
// group of p0, columns on the group of p1 and symbols on the group of p2.

#include "stsrank/bigint.hpp"
#include "stsrank/components.hpp"
#include "stsrank/config.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/field.hpp"
#include "stsrank/kernels.hpp"

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace stsrank {

struct GroupFactorization {
    OneFactorization factorization; // on K_{T+1}, local group indices
    /// factorOf[x] is the factor holding the pairs joined to zero point x (a bijection).
    std::vector<std::uint32_t> factorOf;

    auto operator<=>(const GroupFactorization&) const = default;
};

struct BinaryRecipe {
    TripleSystem interior; // STS(T) on V_0
    std::vector<GroupFactorization> perGroup;
    std::vector<LatinSquare> perLine; // order T+1, indexed like Geometry::lines

    auto operator<=>(const BinaryRecipe&) const = default;
};

struct TernaryRecipe {
    std::vector<TripleSystem> perGroup; // STS(T) per group
    std::vector<LatinSquare> perLine;   // order T

    auto operator<=>(const TernaryRecipe&) const = default;
};

using Recipe = std::variant<BinaryRecipe, TernaryRecipe>;

/// Assembles the system. StructureError if r does not fit spec.
TripleSystem compose(const Recipe& r, const CodeSpec& spec);

/// Recovers the unique recipe of an STS inside the weight-3 design.
/// DomainError if s is not an STS, ContainmentError if it is not inside the
/// design, TheoremViolation if the block structure contradicts the splitting.
Recipe decompose_sts(const TripleSystem& s, const CodeSpec& spec, const Limits& limits = {});

/// The Cartesian product of component choices, in odometer order: interior
/// STS, then per group (factorization, bijection in lex order of images) or
/// the group STS, then per line the Latin square. The first digit is the most
/// significant. Requires every component list to be enumerable.
class CompositionSpace {
public:
    /// ResourceError when a component list is out of reach or the product
    /// exceeds limits.streamRecipeCap.
    explicit CompositionSpace(const CodeSpec& spec, const Limits& limits = {});

    const CodeSpec& spec() const noexcept { return spec_; }
    std::uint64_t size() const noexcept { return size_; }

    Recipe recipe_at(std::uint64_t ordinal) const;
    std::uint64_t ordinal_of(const Recipe& r) const;

private:
    CodeSpec spec_;
    std::vector<std::uint64_t> radix_; // most significant first
    std::uint64_t size_ = 1;
    std::vector<TripleSystem> sts_;
    std::vector<OneFactorization> factorizations_;
    std::vector<LatinSquare> squares_;
    std::size_t groups_ = 0;
    std::size_t lines_ = 0;
};

enum class EnumerationMode { Count, Stream };

struct StreamOptions {
    std::uint64_t startOrdinal = 0; // resume point
    Exec exec = Exec::Parallel;
};

struct EnumerationResult {
    BigCount count;           // formula value (count) or number of recipes in the space (stream)
    std::uint64_t emitted = 0;
};

/// Count mode returns formula_distinct(spec). Stream mode composes every recipe
/// from startOrdinal on and hands (ordinal, system) to `sink` in ordinal order.
EnumerationResult enumerate_compositions(const CodeSpec& spec, EnumerationMode mode,
                                         const std::function<void(std::uint64_t, const TripleSystem&)>& sink = {},
                                         const Limits& limits = {}, const StreamOptions& options = {});

} // namespace stsrank
