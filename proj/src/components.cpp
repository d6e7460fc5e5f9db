#include "stsrank/components.hpp"

#include "stsrank/error.hpp"
#include "stsrank/kernels.hpp"

#include "constants_data.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace stsrank {

namespace {

// ---------------------------------------------------------------- STS(v)

class StsSearch {
public:
    StsSearch(Point v, const std::function<void(const TripleSystem&)>& sink)
        : v_(v), full_((v == 32 ? ~0u : (1u << v) - 1)), covered_(v, 0), sink_(sink)
    {
        for (Point x = 0; x < v; ++x)
            covered_[x] = 1u << x;
    }

    std::uint64_t run()
    {
        search();
        return count_;
    }

private:
    void search()
    {
        Point a = 0;
        while (a < v_ && covered_[a] == full_)
            ++a;
        if (a == v_) {
            ++count_;
            if (sink_)
                sink_(TripleSystem(v_, blocks_));
            return;
        }
        const std::uint32_t freeA = ~covered_[a] & full_;
        const Point b = static_cast<Point>(std::countr_zero(freeA));
        std::uint32_t candidates = freeA & ~covered_[b] & full_;
        candidates &= ~(1u << b);
        for (; candidates; candidates &= candidates - 1) {
            const Point c = static_cast<Point>(std::countr_zero(candidates));
            place(a, b, c, true);
            blocks_.push_back({a, b, c});
            search();
            blocks_.pop_back();
            place(a, b, c, false);
        }
    }

    void place(Point a, Point b, Point c, bool on)
    {
        const std::uint32_t ma = 1u << a, mb = 1u << b, mc = 1u << c;
        if (on) {
            covered_[a] |= mb | mc;
            covered_[b] |= ma | mc;
            covered_[c] |= ma | mb;
        } else {
            covered_[a] &= ~(mb | mc);
            covered_[b] &= ~(ma | mc);
            covered_[c] &= ~(ma | mb);
        }
    }

    Point v_;
    std::uint32_t full_;
    std::vector<std::uint32_t> covered_;
    std::vector<Block> blocks_;
    const std::function<void(const TripleSystem&)>& sink_;
    std::uint64_t count_ = 0;
};

// ---------------------------------------------------------------- 1-factorizations

class FactorizationSearch {
public:
    FactorizationSearch(Point m, const std::function<void(const OneFactorization&)>& sink)
        : m_(m), used_(m, 0), sink_(sink)
    {
    }

    std::uint64_t run()
    {
        if (m_ == 0)
            return 0;
        startFactor(0);
        return count_;
    }

private:
    void startFactor(Point i)
    {
        if (i + 1 == m_) {
            ++count_;
            if (sink_)
                sink_(OneFactorization{m_, factors_});
            return;
        }
        factors_.push_back({{0, i + 1}});
        useEdge(0, i + 1, true);
        extend(i, (1u << 0) | (1u << (i + 1)));
        useEdge(0, i + 1, false);
        factors_.pop_back();
    }

    void extend(Point i, std::uint32_t matched)
    {
        const std::uint32_t all = (1u << m_) - 1;
        if (matched == all) {
            // Edges were added by increasing smallest endpoint, so the factor is already sorted.
            startFactor(i + 1);
            return;
        }
        const Point u = static_cast<Point>(std::countr_zero(~matched & all));
        std::uint32_t partners = ~matched & all & ~used_[u] & ~(1u << u);
        for (; partners; partners &= partners - 1) {
            const Point w = static_cast<Point>(std::countr_zero(partners));
            useEdge(u, w, true);
            factors_.back().push_back({u, w});
            extend(i, matched | (1u << u) | (1u << w));
            factors_.back().pop_back();
            useEdge(u, w, false);
        }
    }

    void useEdge(Point a, Point b, bool on)
    {
        if (on) {
            used_[a] |= 1u << b;
            used_[b] |= 1u << a;
        } else {
            used_[a] &= ~(1u << b);
            used_[b] &= ~(1u << a);
        }
    }

    Point m_;
    std::vector<std::uint32_t> used_;
    std::vector<std::vector<Edge>> factors_;
    const std::function<void(const OneFactorization&)>& sink_;
    std::uint64_t count_ = 0;
};

// ---------------------------------------------------------------- Latin squares

class LatinSearch {
public:
    LatinSearch(unsigned g, const std::function<void(const LatinSquare&)>& sink)
        : square_{g, std::vector<std::uint8_t>(g * g, 0)}, rowUsed_(g, 0), colUsed_(g, 0), sink_(sink)
    {
    }

    std::uint64_t run()
    {
        fill(0);
        return count_;
    }

private:
    void fill(unsigned cell)
    {
        const unsigned g = square_.order;
        if (cell == g * g) {
            ++count_;
            if (sink_)
                sink_(square_);
            return;
        }
        const unsigned r = cell / g, c = cell % g;
        std::uint32_t free = ~(rowUsed_[r] | colUsed_[c]) & ((1u << g) - 1);
        for (; free; free &= free - 1) {
            const auto s = static_cast<unsigned>(std::countr_zero(free));
            square_.cells[cell] = static_cast<std::uint8_t>(s);
            rowUsed_[r] |= 1u << s;
            colUsed_[c] |= 1u << s;
            fill(cell + 1);
            rowUsed_[r] &= ~(1u << s);
            colUsed_[c] &= ~(1u << s);
        }
    }

    LatinSquare square_;
    std::vector<std::uint32_t> rowUsed_;
    std::vector<std::uint32_t> colUsed_;
    const std::function<void(const LatinSquare&)>& sink_;
    std::uint64_t count_ = 0;
};

bool sts_order_in_cap(std::uint64_t v, const Limits& limits)
{
    return v == 1 || v == 3 || v == 7 || v == 9 || (v == 13 && limits.longMode);
}

bool factorization_order_in_cap(std::uint64_t m)
{
    return m == 2 || m == 4 || m == 6 || m == 8;
}

bool latin_order_in_cap(std::uint64_t g)
{
    return g >= 1 && g <= 5;
}

[[noreturn]] void unknown(CountKind kind, std::uint64_t order, const std::string& why)
{
    throw UnknownConstantError(to_string(kind) + "(" + std::to_string(order) + ") " + why +
                               "; use catalog_count for tabulated values");
}

const std::map<std::pair<CountKind, std::uint64_t>, CountConstant>& constants_table()
{
    static const auto table = [] {
        std::map<std::pair<CountKind, std::uint64_t>, CountConstant> t;
        const auto doc = nlohmann::json::parse(detail::kConstantsJson);
        for (const auto& entry : doc.at("constants")) {
            CountConstant c;
            c.kind = parse_count_kind(entry.at("kind").get<std::string>());
            c.order = entry.at("order").get<std::uint64_t>();
            c.value = parse_decimal(entry.at("value").get<std::string>());
            c.provenance = Provenance::PublishedConstant;
            c.source = entry.at("source").get<std::string>();
            t.emplace(std::make_pair(c.kind, c.order), std::move(c));
        }
        return t;
    }();
    return table;
}

} // namespace

bool OneFactorization::valid() const
{
    const Point m = vertexCount;
    if (m == 0 || m > 32 || m % 2 != 0 || factors.size() != m - 1)
        return false;
    std::vector<std::uint32_t> used(m, 0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (f.size() != m / 2 || !std::is_sorted(f.begin(), f.end()))
            return false;
        std::uint32_t touched = 0;
        bool hasCanonicalEdge = false;
        for (auto [a, b] : f) {
            if (a >= b || b >= m)
                return false;
            if (touched & ((1u << a) | (1u << b)))
                return false;
            touched |= (1u << a) | (1u << b);
            if (used[a] & (1u << b))
                return false;
            used[a] |= 1u << b;
            used[b] |= 1u << a;
            hasCanonicalEdge = hasCanonicalEdge || (a == 0 && b == i + 1);
        }
        if (!hasCanonicalEdge)
            return false;
    }
    return true; // m-1 disjoint perfect matchings cover all m(m-1)/2 edges
}

OneFactorization OneFactorization::canonical(Point vertexCount, std::vector<std::vector<Edge>> factors)
{
    for (auto& f : factors) {
        for (auto& e : f)
            if (e.first > e.second)
                std::swap(e.first, e.second);
        std::sort(f.begin(), f.end());
    }
    // Vertex 0's edge is the first edge of every factor after sorting.
    std::sort(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
        return x.front().second < y.front().second;
    });
    return OneFactorization{vertexCount, std::move(factors)};
}

bool LatinSquare::valid() const
{
    const unsigned g = order;
    if (g == 0 || g > 32 || cells.size() != static_cast<std::size_t>(g) * g)
        return false;
    const std::uint32_t full = g == 32 ? ~0u : (1u << g) - 1;
    for (unsigned i = 0; i < g; ++i) {
        std::uint32_t row = 0, col = 0;
        for (unsigned j = 0; j < g; ++j) {
            if (at(i, j) >= g || at(j, i) >= g)
                return false;
            row |= 1u << at(i, j);
            col |= 1u << at(j, i);
        }
        if (row != full || col != full)
            return false;
    }
    return true;
}

std::string to_string(CountKind kind)
{
    switch (kind) {
    case CountKind::N1: return "N1";
    case CountKind::N2: return "N2";
    case CountKind::N3: return "N3";
    }
    return "?";
}

std::string to_string(Provenance p)
{
    return p == Provenance::Enumerated ? "enumerated" : "published-constant";
}

CountKind parse_count_kind(const std::string& s)
{
    if (s == "N1" || s == "n1")
        return CountKind::N1;
    if (s == "N2" || s == "n2")
        return CountKind::N2;
    if (s == "N3" || s == "n3")
        return CountKind::N3;
    throw ParameterError("unknown count kind '" + s + "' (expected n1, n2 or n3)");
}

std::uint64_t enumerate_all_sts(Point v, const std::function<void(const TripleSystem&)>& sink,
                                const Limits& limits)
{
    if (!sts_order_in_cap(v, limits))
        unknown(CountKind::N1, v, "is outside the STS enumeration cap {1,3,7,9} (13 in long mode)");
    return StsSearch(v, sink).run();
}

std::uint64_t enumerate_one_factorizations(Point m, const std::function<void(const OneFactorization&)>& sink)
{
    if (!factorization_order_in_cap(m))
        unknown(CountKind::N2, m, "is outside the 1-factorization enumeration cap {2,4,6,8}");
    return FactorizationSearch(m, sink).run();
}

std::uint64_t enumerate_transversal_designs(unsigned g, const std::function<void(const LatinSquare&)>& sink)
{
    if (!latin_order_in_cap(g))
        unknown(CountKind::N3, g, "is outside the Latin square enumeration cap 1..5");
    return LatinSearch(g, sink).run();
}

std::vector<TripleSystem> all_sts(Point v, const Limits& limits)
{
    std::vector<TripleSystem> out;
    enumerate_all_sts(v, [&](const TripleSystem& s) { out.push_back(s); }, limits);
    return out;
}

std::vector<OneFactorization> all_one_factorizations(Point m)
{
    std::vector<OneFactorization> out;
    enumerate_one_factorizations(m, [&](const OneFactorization& f) { out.push_back(f); });
    return out;
}

std::vector<LatinSquare> all_latin_squares(unsigned g)
{
    std::vector<LatinSquare> out;
    enumerate_transversal_designs(g, [&](const LatinSquare& l) { out.push_back(l); });
    return out;
}

std::optional<CountConstant> published_constant(CountKind kind, std::uint64_t order)
{
    const auto& table = constants_table();
    if (auto it = table.find({kind, order}); it != table.end())
        return it->second;
    return std::nullopt;
}

CountConstant catalog_count(CountKind kind, std::uint64_t order, const Limits& limits)
{
    static std::mutex memoMutex;
    static std::map<std::pair<CountKind, std::uint64_t>, CountConstant> memo;

    const bool enumerable = (kind == CountKind::N1 && sts_order_in_cap(order, limits)) ||
                            (kind == CountKind::N2 && factorization_order_in_cap(order)) ||
                            (kind == CountKind::N3 && latin_order_in_cap(order));
    if (!enumerable) {
        if (auto c = published_constant(kind, order))
            return *c;
        unknown(kind, order, "is neither enumerable within the caps nor tabulated");
    }

    {
        std::lock_guard lock(memoMutex);
        if (auto it = memo.find({kind, order}); it != memo.end())
            return it->second;
    }

    CountConstant c;
    c.kind = kind;
    c.order = order;
    c.provenance = Provenance::Enumerated;
    switch (kind) {
    case CountKind::N1:
        c.value = enumerate_all_sts(static_cast<Point>(order), {}, limits);
        c.source = "backtracking over smallest uncovered pair";
        break;
    case CountKind::N2:
        c.value = enumerate_one_factorizations(static_cast<Point>(order), {});
        c.source = "backtracking with factors ordered by vertex 0's partner";
        break;
    case CountKind::N3:
        c.value = kernels::count_latin_squares(static_cast<unsigned>(order), Exec::Parallel);
        c.source = "row-by-row Latin square backtracking";
        break;
    }

    std::lock_guard lock(memoMutex);
    return memo.try_emplace({kind, order}, std::move(c)).first->second;
}

} // namespace stsrank
