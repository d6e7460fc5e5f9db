#pragma once

// Data-parallel kernels. Each kernel has a serial reference path and an
// OpenMP path; both return identical results (tests compare them and the
// benchmark target times them).

#include "stsrank/designs.hpp"
#include "stsrank/field.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace stsrank {

enum class Exec { Serial, Parallel };

namespace kernels {

/// All triples {i<j<k} whose all-ones support vector is a codeword of ker(h),
/// in lexicographic order.
std::vector<Block> weight3_scan(const FieldMatrix& h, Exec exec);

/// Weight histogram (index = Hamming weight) of every word in the span of
/// `basis` over GF(p); p^|basis| words in total, the zero word included.
std::vector<std::uint64_t> span_weight_histogram(const std::vector<std::vector<std::uint8_t>>& basis,
                                                 int p, std::size_t length, Exec exec);

struct StabilizerScan {
    std::uint64_t stabilizerOrder = 0;   // |{g : g(D) = D}|
    std::uint64_t predicateAccepted = 0; // |{g : predicate(g)}|
    std::uint64_t disagreements = 0;     // |{g : (g(D) = D) != predicate(g)}|
};

/// Runs over all v! permutations of the points of d (v <= 11).
StabilizerScan stabilizer_scan(const TripleSystem& d,
                               const std::function<bool(std::span<const Point>)>& predicate,
                               Exec exec);

/// Number of Latin squares of order g (g <= 5), by row-by-row backtracking;
/// the parallel path splits on the choice of the first row.
std::uint64_t count_latin_squares(unsigned g, Exec exec);

} // namespace kernels
} // namespace stsrank
