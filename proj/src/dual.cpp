#include "stsrank/dual.hpp"

#include "stsrank/designs.hpp"
#include "stsrank/error.hpp"

#include <cmath>

namespace stsrank {

namespace {

TripleSystem system_of_incidence(const FieldMatrix& a)
{
    std::vector<Block> blocks;
    blocks.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::vector<Point> support;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const auto e = a.at(r, c);
            if (e > 1)
                throw DomainError("incidence entries must be 0 or 1");
            if (e == 1)
                support.push_back(static_cast<Point>(c));
        }
        if (support.size() != 3)
            throw DomainError("row " + std::to_string(r) + " of the incidence matrix has weight " +
                              std::to_string(support.size()) + ", expected 3");
        blocks.push_back({support[0], support[1], support[2]});
    }
    return TripleSystem::normalized(static_cast<Point>(a.cols()), std::move(blocks));
}

} // namespace

DualStructureReport verify_dual_structure(const FieldMatrix& a, const Limits& limits, Exec exec)
{
    const int p = a.prime();
    if (p != 2 && p != 3)
        throw ParameterError("dual structure is defined over GF(2) or GF(3) only");

    const auto system = system_of_incidence(a);
    const auto cert = validate_sts(system);
    if (!cert.isSts)
        throw DomainError("matrix is not the incidence matrix of a Steiner triple system");

    const std::size_t v = a.cols();
    const std::size_t rank = matrix_rank(a);
    DualStructureReport report;
    report.corank = v - rank;

    // Resource check: p^m words must not exceed 2^cap.
    const double log2Words = static_cast<double>(report.corank) * std::log2(static_cast<double>(p));
    if (log2Words > static_cast<double>(limits.dualCorankCap) + 1e-9)
        throw ResourceError("dual code has " + std::to_string(p) + "^" + std::to_string(report.corank) +
                            " words, above the cap of 2^" + std::to_string(limits.dualCorankCap));

    const auto m = report.corank;
    if (p == 2) {
        const std::uint64_t block = std::uint64_t{1} << m;
        report.multiplicity = (v + 1) % block == 0 ? (v + 1) / block : 0;
        report.expectedWeight = (v + 1) / 2;
    } else {
        std::uint64_t block = 1;
        for (std::size_t i = 0; i + 1 < m; ++i)
            block *= 3;
        report.multiplicity = m >= 1 && v % block == 0 ? v / block : 0;
        report.expectedWeight = 2 * v / 3;
    }

    const auto basis = null_space_basis(a);
    const auto hist = kernels::span_weight_histogram(basis, p, v, exec);
    for (std::size_t w = 1; w < hist.size(); ++w)
        if (hist[w])
            report.weightHistogram[w] = hist[w];

    bool ok = true;
    if (p == 2) {
        ok = (v + 1) % 2 == 0;
        for (const auto& [w, count] : report.weightHistogram)
            ok = ok && w == report.expectedWeight;
    } else {
        // Every block has three ones, so j always lies in the ternary dual.
        report.allOnesMultiples = 2;
        ok = v % 3 == 0;
        for (const auto& [w, count] : report.weightHistogram) {
            const auto regular = w == v ? count - report.allOnesMultiples : count;
            ok = ok && (regular == 0 || w == report.expectedWeight);
        }
    }
    report.passed = ok;
    return report;
}

} // namespace stsrank
