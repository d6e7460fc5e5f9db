#include "layout.hpp"
#include "stsrank/composer.hpp"
#include "stsrank/counting.hpp"
#include "stsrank/error.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <string>

namespace stsrank {

namespace {

std::vector<std::uint32_t> unrank_permutation(std::uint64_t rank, std::size_t n)
{
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    std::vector<std::uint64_t> fact(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i)
        fact[i] = fact[i - 1] * i;
    std::vector<std::uint32_t> perm;
    perm.reserve(n);
    for (std::size_t i = n; i > 0; --i) {
        const std::uint64_t k = rank / fact[i - 1];
        rank %= fact[i - 1];
        perm.push_back(pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return perm;
}

std::uint64_t rank_permutation(const std::vector<std::uint32_t>& perm)
{
    const std::size_t n = perm.size();
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            smaller += perm[j] < perm[i];
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

template <class T>
std::uint64_t index_in(const std::vector<T>& sorted, const T& x, const char* what)
{
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it == sorted.end() || *it != x)
        throw StructureError(std::string("recipe uses an unknown ") + what);
    return static_cast<std::uint64_t>(it - sorted.begin());
}

template <class F>
auto reachable(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const UnknownConstantError& e) {
        throw ResourceError(std::string("stream enumeration out of reach: ") + e.what());
    }
}

} // namespace

CompositionSpace::CompositionSpace(const CodeSpec& spec, const Limits& limits) : spec_(spec)
{
    const std::uint64_t T = spec.T();
    const std::uint64_t M = spec.M();
    if (M > 1'000'000)
        throw ResourceError("too many groups for stream enumeration at " + spec.label());
    groups_ = M;
    lines_ = static_cast<std::size_t>(M * (M - 1) / 6);
    const std::uint64_t order = spec.binary() ? T + 1 : T;
    if (T > 64)
        throw ResourceError("component order " + std::to_string(T) + " is out of reach for stream enumeration");

    sts_ = reachable([&] { return all_sts(static_cast<Point>(T), limits); });
    if (spec.binary())
        factorizations_ = reachable([&] { return all_one_factorizations(static_cast<Point>(T + 1)); });
    if (lines_ > 0)
        squares_ = reachable([&] { return all_latin_squares(static_cast<unsigned>(order)); });

    if (spec.binary()) {
        radix_.push_back(sts_.size());
        std::uint64_t tFact = 1;
        for (std::uint64_t i = 2; i <= T; ++i)
            tFact *= i;
        for (std::size_t g = 0; g < groups_; ++g) {
            radix_.push_back(factorizations_.size());
            radix_.push_back(tFact);
        }
    } else {
        for (std::size_t g = 0; g < groups_; ++g)
            radix_.push_back(sts_.size());
    }
    for (std::size_t l = 0; l < lines_; ++l)
        radix_.push_back(squares_.size());

    size_ = 1;
    for (auto r : radix_) {
        if (r != 0 && size_ > limits.streamRecipeCap / r)
            throw ResourceError("more than " + std::to_string(limits.streamRecipeCap) + " recipes at " +
                                spec.label() + "; use count mode");
        size_ *= r;
    }
    if (size_ > limits.streamRecipeCap)
        throw ResourceError("more than " + std::to_string(limits.streamRecipeCap) + " recipes at " + spec.label() +
                            "; use count mode");
}

Recipe CompositionSpace::recipe_at(std::uint64_t ordinal) const
{
    if (ordinal >= size_)
        throw ParameterError("recipe ordinal " + std::to_string(ordinal) + " out of range [0, " +
                             std::to_string(size_) + ")");
    std::vector<std::uint64_t> digit(radix_.size());
    for (std::size_t i = radix_.size(); i-- > 0;) {
        digit[i] = ordinal % radix_[i];
        ordinal /= radix_[i];
    }

    std::size_t pos = 0;
    std::vector<LatinSquare> perLine;
    auto takeLines = [&] {
        for (std::size_t l = 0; l < lines_; ++l)
            perLine.push_back(squares_[digit[pos++]]);
    };
    if (spec_.binary()) {
        BinaryRecipe r;
        r.interior = sts_[digit[pos++]];
        for (std::size_t g = 0; g < groups_; ++g) {
            GroupFactorization gf;
            gf.factorization = factorizations_[digit[pos++]];
            gf.factorOf = unrank_permutation(digit[pos++], spec_.T());
            r.perGroup.push_back(std::move(gf));
        }
        takeLines();
        r.perLine = std::move(perLine);
        return r;
    }
    TernaryRecipe r;
    for (std::size_t g = 0; g < groups_; ++g)
        r.perGroup.push_back(sts_[digit[pos++]]);
    takeLines();
    r.perLine = std::move(perLine);
    return r;
}

std::uint64_t CompositionSpace::ordinal_of(const Recipe& recipe) const
{
    std::vector<std::uint64_t> digit;
    const std::vector<LatinSquare>* perLine = nullptr;
    if (spec_.binary()) {
        const auto* r = std::get_if<BinaryRecipe>(&recipe);
        if (!r || r->perGroup.size() != groups_)
            throw StructureError("recipe does not match " + spec_.label());
        digit.push_back(index_in(sts_, r->interior, "interior system"));
        for (const auto& gf : r->perGroup) {
            const auto it = std::find(factorizations_.begin(), factorizations_.end(), gf.factorization);
            if (it == factorizations_.end())
                throw StructureError("recipe uses an unknown 1-factorization");
            digit.push_back(static_cast<std::uint64_t>(it - factorizations_.begin()));
            if (gf.factorOf.size() != spec_.T())
                throw StructureError("zero-point assignment has the wrong size");
            digit.push_back(rank_permutation(gf.factorOf));
        }
        perLine = &r->perLine;
    } else {
        const auto* r = std::get_if<TernaryRecipe>(&recipe);
        if (!r || r->perGroup.size() != groups_)
            throw StructureError("recipe does not match " + spec_.label());
        for (const auto& s : r->perGroup)
            digit.push_back(index_in(sts_, s, "group system"));
        perLine = &r->perLine;
    }
    if (perLine->size() != lines_)
        throw StructureError("recipe has the wrong number of Latin squares");
    for (const auto& sq : *perLine)
        digit.push_back(index_in(squares_, sq, "Latin square"));

    std::uint64_t ordinal = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i)
        ordinal = ordinal * radix_[i] + digit[i];
    return ordinal;
}

EnumerationResult enumerate_compositions(const CodeSpec& spec, EnumerationMode mode,
                                         const std::function<void(std::uint64_t, const TripleSystem&)>& sink,
                                         const Limits& limits, const StreamOptions& options)
{
    EnumerationResult result;
    if (mode == EnumerationMode::Count) {
        result.count = formula_distinct(spec, limits);
        return result;
    }

    const CompositionSpace space(spec, limits);
    result.count = space.size();
    if (options.startOrdinal > space.size())
        throw ParameterError("checkpoint ordinal beyond the end of the enumeration");

    const detail::Layout layout(spec);
    const bool parallel = options.exec == Exec::Parallel;
    const std::uint64_t batch = parallel ? 1024 * static_cast<std::uint64_t>(omp_get_max_threads()) : 1;
    std::vector<TripleSystem> buffer;
    for (std::uint64_t base = options.startOrdinal; base < space.size(); base += batch) {
        const std::uint64_t n = std::min(batch, space.size() - base);
        if (!parallel) {
            const TripleSystem s = detail::compose_with(space.recipe_at(base), spec, layout);
            if (sink)
                sink(base, s);
            ++result.emitted;
            continue;
        }
        buffer.assign(n, TripleSystem{});
#pragma omp parallel for schedule(dynamic, 32)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            buffer[i] = detail::compose_with(space.recipe_at(base + i), spec, layout);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (sink)
                sink(base + i, buffer[i]);
            ++result.emitted;
        }
    }
    return result;
}

} // namespace stsrank
