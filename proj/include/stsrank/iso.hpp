#pragma once

// Canonical forms and automorphism groups of small STS, membership in the
// automorphism group of C_{n,t}, and isomorphism classes of enumerated systems.

#include "stsrank/bigint.hpp"
#include "stsrank/config.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/field.hpp"

#include <vector>

namespace stsrank {

struct Permutation {
    std::vector<Point> images; // x -> images[x]

    static Permutation identity(Point v);
    /// Throws ParameterError unless images is a bijection on {0..v-1}.
    static Permutation from_images(std::vector<Point> images);

    Point degree() const noexcept { return static_cast<Point>(images.size()); }
    /// (this * other)(x) = this(other(x)).
    Permutation operator*(const Permutation& other) const;
    Permutation inverse() const;

    auto operator<=>(const Permutation&) const = default;
};

/// Least relabeled block list over the leaves of a partition-refinement search
/// tree. Equal for two STS iff they are isomorphic. Needs an STS with
/// v <= limits.canonVertexCap (27 in long mode).
TripleSystem canonical_form(const TripleSystem& d, const Limits& limits = {});

/// A relabeling taking d to canonical_form(d).
Permutation canonical_labeling(const TripleSystem& d, const Limits& limits = {});

struct AutomorphismGroup {
    BigCount order;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements; // sorted, identity first
};

AutomorphismGroup automorphism_group(const TripleSystem& d, const Limits& limits = {});

/// True iff g fixes V_0 setwise, permutes the column groups and induces a
/// collineation of the quotient geometry.
bool code_aut_membership(const Permutation& g, const CodeSpec& spec);

struct IsoClass {
    TripleSystem canonical;
    std::uint64_t multiplicity = 0;
    BigCount autOrder;
    BigCount stabilizerOrder; // |Aut S ∩ Aut C|
    std::size_t rank = 0;     // p-rank
};

struct IsoClassReport {
    std::vector<IsoClass> classes; // sorted by canonical form
    BigCount totalDistinct;
    BigCount autCode;
    BigRational massSum;           // sum over classes of |Aut C| / stabilizerOrder
    bool massBalanced = false;     // massSum == totalDistinct
    std::vector<std::pair<std::size_t, std::uint64_t>> rankHistogram; // (rank, systems)
};

/// Partitions the (distinct) systems by canonical form and evaluates the mass
/// formula against aut_code_order(spec). ContainmentError if a system is not
/// inside the weight-3 design; DomainError on duplicates.
IsoClassReport iso_classes(const std::vector<TripleSystem>& systems, const CodeSpec& spec,
                           const Limits& limits = {});

} // namespace stsrank
