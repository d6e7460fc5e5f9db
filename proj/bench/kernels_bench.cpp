// Serial reference vs OpenMP path for each data-parallel kernel. The second
// benchmark argument selects the path: 0 serial, 1 parallel.

#include "stsrank/composer.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/enumerator.hpp"
#include "stsrank/field.hpp"
#include "stsrank/geometry.hpp"
#include "stsrank/iso.hpp"
#include "stsrank/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace stsrank;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_Weight3Scan(benchmark::State& state)
{
    const auto h = build_parity_check(CodeSpec::make(2, static_cast<int>(state.range(0)), 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::weight3_scan(h, exec_of(state)));
}
BENCHMARK(BM_Weight3Scan)->ArgsProduct({{5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SpanHistogram(benchmark::State& state)
{
    // dual of PG(dim,2): corank grows with dim
    const auto d = classic::projective_space(static_cast<unsigned>(state.range(0)));
    const auto basis = null_space_basis(incidence_matrix(d, 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::span_weight_histogram(basis, 2, d.points(), exec_of(state)));
}
BENCHMARK(BM_SpanHistogram)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_StabilizerScan(benchmark::State& state)
{
    const auto spec = state.range(0) == 7 ? CodeSpec::make(2, 3, 1) : CodeSpec::make(3, 2, 1);
    const auto d = weight3_design(spec);
    const auto member = [&](std::span<const Point> g) {
        return code_aut_membership(Permutation{std::vector<Point>(g.begin(), g.end())}, spec);
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::stabilizer_scan(*d, member, exec_of(state)));
}
BENCHMARK(BM_StabilizerScan)->ArgsProduct({{7, 9}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LatinSquares(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::count_latin_squares(static_cast<unsigned>(state.range(0)), exec_of(state)));
}
BENCHMARK(BM_LatinSquares)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ExactCover(benchmark::State& state)
{
    const auto d = weight3_design(CodeSpec::make(2, 4, static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_cover_sts(*d, {}, {}, exec_of(state)));
}
BENCHMARK(BM_ExactCover)->ArgsProduct({{1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Stream(benchmark::State& state)
{
    const auto spec = CodeSpec::make(2, 4, 2);
    StreamOptions options;
    options.exec = exec_of(state);
    for (auto _ : state) {
        std::uint64_t blocks = 0;
        enumerate_compositions(
            spec, EnumerationMode::Stream, [&](std::uint64_t, const TripleSystem& s) { blocks += s.size(); }, {},
            options);
        benchmark::DoNotOptimize(blocks);
    }
}
BENCHMARK(BM_Stream)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
