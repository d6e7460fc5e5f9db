#pragma once

#include "stsrank/config.hpp"
#include "stsrank/field.hpp"
#include "stsrank/kernels.hpp"

#include <cstdint>
#include <map>

namespace stsrank {

struct DualStructureReport {
    std::size_t corank = 0;              // m = v - rank
    std::uint64_t multiplicity = 0;      // w with v = w*2^m - 1 (binary) or v = 3^(m-1)*w (ternary); 0 if no such w
    std::map<std::size_t, std::uint64_t> weightHistogram; // nonzero dual words by weight
    std::uint64_t allOnesMultiples = 0;  // ternary: nonzero scalar multiples of j in the dual
    std::size_t expectedWeight = 0;      // (v+1)/2 or 2v/3
    bool passed = false;
};

/// Enumerates the dual of the code spanned by an STS incidence matrix A over
/// GF(2) or GF(3) and checks the constant-weight property: binary duals are
/// equidistant with weight (v+1)/2; ternary duals consist of the multiples of
/// the all-ones vector and words of weight 2v/3.
///
/// Throws DomainError when A is not the incidence matrix of an STS and
/// ResourceError when p^corank exceeds 2^limits.dualCorankCap.
DualStructureReport verify_dual_structure(const FieldMatrix& a, const Limits& limits = {},
                                          Exec exec = Exec::Parallel);

} // namespace stsrank
