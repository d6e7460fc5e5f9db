#pragma once

// Enumerators for the building blocks of a composed system: labeled STS on a
// small point set (N1), 1-factorizations of K_m (N2), and transversal designs
// TD[3;g] in Latin-square form (N3); plus the table of published constants.

#include "stsrank/bigint.hpp"
#include "stsrank/config.hpp"
#include "stsrank/designs.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stsrank {

using Edge = std::pair<Point, Point>;

/// A 1-factorization of K_{2k} on vertices 0..2k-1. Canonical order: factor i
/// contains the edge {0, i+1}; each factor lists its edges sorted.
struct OneFactorization {
    Point vertexCount = 0;
    std::vector<std::vector<Edge>> factors;

    /// Checks perfect matchings, pairwise disjointness, full edge cover and canonical order.
    bool valid() const;
    /// Sorts edges within factors and orders factors by vertex 0's partner.
    static OneFactorization canonical(Point vertexCount, std::vector<std::vector<Edge>> factors);

    auto operator<=>(const OneFactorization&) const = default;
};

/// TD[3;g] as a Latin square: the triple (row r, column c, symbol cells[r*g+c]).
struct LatinSquare {
    unsigned order = 0;
    std::vector<std::uint8_t> cells; // row-major

    std::uint8_t at(unsigned r, unsigned c) const { return cells[r * order + c]; }
    bool valid() const;

    auto operator<=>(const LatinSquare&) const = default;
};
using TransversalDesign = LatinSquare;

enum class CountKind { N1, N2, N3 };
enum class Provenance { Enumerated, PublishedConstant };

std::string to_string(CountKind kind);
std::string to_string(Provenance p);
CountKind parse_count_kind(const std::string& s);

struct CountConstant {
    CountKind kind = CountKind::N1;
    std::uint64_t order = 0;
    BigCount value;
    Provenance provenance = Provenance::Enumerated;
    std::string source;
};

/// All labeled STS(v) on {0..v-1} in lexicographic order of their block lists.
/// v must be 1, 3, 7 or 9 (13 with limits.longMode). `sink` may be empty for
/// count-only runs. Returns the number of systems.
std::uint64_t enumerate_all_sts(Point v, const std::function<void(const TripleSystem&)>& sink,
                                const Limits& limits = {});

/// All 1-factorizations of K_m, m in {2,4,6,8}, in canonical form.
std::uint64_t enumerate_one_factorizations(Point m, const std::function<void(const OneFactorization&)>& sink);

/// All Latin squares of order g <= 5 in row-major lexicographic order.
std::uint64_t enumerate_transversal_designs(unsigned g, const std::function<void(const LatinSquare&)>& sink);

std::vector<TripleSystem> all_sts(Point v, const Limits& limits = {});
std::vector<OneFactorization> all_one_factorizations(Point m);
std::vector<LatinSquare> all_latin_squares(unsigned g);

/// The checked-in constants table (data/constants.json), if it lists (kind, order).
std::optional<CountConstant> published_constant(CountKind kind, std::uint64_t order);

/// Enumerated value inside the caps, else the published constant, else
/// UnknownConstantError.
CountConstant catalog_count(CountKind kind, std::uint64_t order, const Limits& limits = {});

} // namespace stsrank
