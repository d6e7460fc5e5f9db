#include "stsrank/geometry.hpp"

#include "stsrank/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

namespace stsrank {

namespace {

constexpr std::uint32_t kNoLine = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kMaxGeometryPoints = 4096;

std::vector<std::uint8_t> digits_of(std::uint64_t value, unsigned count, unsigned base)
{
    std::vector<std::uint8_t> out(count);
    for (unsigned d = 0; d < count; ++d) {
        out[count - 1 - d] = static_cast<std::uint8_t>(value % base);
        value /= base;
    }
    return out;
}

void check_vertex_cap(const CodeSpec& spec, const Limits& limits)
{
    if (spec.length() > limits.weight3VertexCap)
        throw ResourceError("weight-3 design of " + spec.label() + " has " + std::to_string(spec.length()) +
                            " points, above the cap of " + std::to_string(limits.weight3VertexCap));
}

} // namespace

std::uint32_t Geometry::third_point(std::uint32_t a, std::uint32_t b) const
{
    const auto& l = lines.at(line_through(a, b));
    for (auto x : l)
        if (x != a && x != b)
            return x;
    throw TheoremViolation("degenerate line");
}

std::size_t Geometry::line_through(std::uint32_t a, std::uint32_t b) const
{
    const auto n = points.size();
    if (a >= n || b >= n || a == b)
        throw ParameterError("line_through needs two distinct geometry points");
    return lineIndex[a * n + b];
}

FieldMatrix parity_check_for(const CodeSpec& spec)
{
    return build_parity_check(spec);
}

GroupPartition column_partition(const CodeSpec& spec)
{
    const std::uint64_t v = spec.length();
    if (v > (1u << 22))
        throw ResourceError("column partition of " + spec.label() + " is too large to materialize");

    GroupPartition part;
    part.groupOf.assign(v, GroupPartition::kZero);
    Point next = 0;
    std::uint64_t groupSize = spec.T();
    if (spec.binary()) {
        for (std::uint64_t i = 0; i < spec.T(); ++i)
            part.zeroSet.push_back(next++);
        groupSize = spec.T() + 1;
    }
    for (std::uint64_t g = 0; g < spec.M(); ++g) {
        std::vector<Point> group;
        for (std::uint64_t k = 0; k < groupSize; ++k) {
            part.groupOf[next] = static_cast<std::int64_t>(g);
            group.push_back(next++);
        }
        part.groups.push_back(std::move(group));
        part.groupPoint.push_back(static_cast<std::uint32_t>(g));
    }
    return part;
}

Geometry geometry_of(const CodeSpec& spec)
{
    if (spec.M() > kMaxGeometryPoints)
        throw ResourceError("geometry of " + spec.label() + " has " + std::to_string(spec.M()) + " points");

    Geometry geo;
    const unsigned coords = spec.n() - spec.t();
    const auto n = static_cast<std::uint32_t>(spec.M());
    if (spec.binary()) {
        geo.kind = GeometryKind::Projective2;
        geo.dimension = coords - 1;
        for (std::uint32_t value = 1; value <= n; ++value)
            geo.points.push_back(digits_of(value, coords, 2));
        // point index k <-> vector value k+1
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) {
                const std::uint32_t c = ((a + 1) ^ (b + 1)) - 1;
                if (c > b)
                    geo.lines.push_back({a, b, c});
            }
    } else {
        geo.kind = GeometryKind::Affine3;
        geo.dimension = coords;
        for (std::uint32_t value = 0; value < n; ++value)
            geo.points.push_back(digits_of(value, coords, 3));
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) {
                std::uint32_t c = 0;
                for (unsigned d = 0; d < coords; ++d)
                    c = c * 3 + static_cast<std::uint32_t>((6 - geo.points[a][d] - geo.points[b][d]) % 3);
                if (c > b)
                    geo.lines.push_back({a, b, c});
            }
    }
    std::sort(geo.lines.begin(), geo.lines.end());

    geo.lineIndex.assign(static_cast<std::size_t>(n) * n, kNoLine);
    for (std::uint32_t i = 0; i < geo.lines.size(); ++i) {
        const auto& l = geo.lines[i];
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                if (x != y)
                    geo.lineIndex[l[x] * n + l[y]] = i;
    }
    return geo;
}

BlockClass classify_block(const GroupPartition& part, const Geometry& geo, const Block& b)
{
    for (auto x : b)
        if (x >= part.groupOf.size())
            throw DomainError("block point outside the code length");

    const auto g0 = part.groupOf[b[0]];
    const auto g1 = part.groupOf[b[1]];
    const auto g2 = part.groupOf[b[2]];
    const int zeros = (g0 == GroupPartition::kZero) + (g1 == GroupPartition::kZero) + (g2 == GroupPartition::kZero);

    if (zeros == 3)
        return block_class::Interior{};
    if (zeros == 1) {
        // Blocks are sorted and V_0 precedes the groups, so b[0] is the zero point.
        if (g0 == GroupPartition::kZero && g1 == g2)
            return block_class::Mixed{static_cast<std::uint32_t>(g1), b[0]};
        throw DomainError("block meets V_0 once but its other points lie in different groups");
    }
    if (zeros == 2)
        throw DomainError("block meets V_0 in exactly two points");

    if (g0 == g1 && g1 == g2) {
        if (geo.kind == GeometryKind::Affine3)
            return block_class::Mixed{static_cast<std::uint32_t>(g0), std::nullopt};
        throw DomainError("binary block inside a single group");
    }
    if (g0 == g1 || g1 == g2 || g0 == g2)
        throw DomainError("block has two points in one group and one in another");

    const auto p0 = part.groupPoint[static_cast<std::size_t>(g0)];
    const auto p1 = part.groupPoint[static_cast<std::size_t>(g1)];
    const auto p2 = part.groupPoint[static_cast<std::size_t>(g2)];
    const auto line = geo.line_through(p0, p1);
    if (geo.third_point(p0, p1) != p2)
        throw DomainError("block meets three groups that are not collinear");
    return block_class::Transversal{line};
}

std::shared_ptr<const TripleSystem> weight3_design(const CodeSpec& spec, const Limits& limits, Exec exec)
{
    check_vertex_cap(spec, limits);

    static std::mutex cacheMutex;
    static std::map<CodeSpec, std::shared_ptr<const TripleSystem>> cache;
    {
        std::lock_guard lock(cacheMutex);
        if (auto it = cache.find(spec); it != cache.end())
            return it->second;
    }

    const auto h = build_parity_check(spec);
    auto blocks = kernels::weight3_scan(h, exec);
    auto design = std::make_shared<const TripleSystem>(static_cast<Point>(spec.length()), std::move(blocks));

    std::lock_guard lock(cacheMutex);
    return cache.try_emplace(spec, std::move(design)).first->second;
}

TripleSystem constructive_weight3_design(const CodeSpec& spec, const Limits& limits)
{
    check_vertex_cap(spec, limits);
    const auto part = column_partition(spec);
    const auto geo = geometry_of(spec);

    std::vector<Block> blocks;
    auto all_triples = [&](const std::vector<Point>& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                for (std::size_t k = j + 1; k < pts.size(); ++k)
                    blocks.push_back({pts[i], pts[j], pts[k]});
    };

    if (spec.binary()) {
        all_triples(part.zeroSet);
        for (const auto& group : part.groups)
            for (auto x : part.zeroSet)
                for (std::size_t i = 0; i < group.size(); ++i)
                    for (std::size_t j = i + 1; j < group.size(); ++j)
                        blocks.push_back({x, group[i], group[j]});
    } else {
        for (const auto& group : part.groups)
            all_triples(group);
    }

    std::vector<std::uint32_t> groupAt(geo.points.size());
    for (std::uint32_t g = 0; g < part.groupPoint.size(); ++g)
        groupAt[part.groupPoint[g]] = g;
    for (const auto& line : geo.lines)
        for (auto a : part.groups[groupAt[line[0]]])
            for (auto b : part.groups[groupAt[line[1]]])
                for (auto c : part.groups[groupAt[line[2]]])
                    blocks.push_back({a, b, c});

    return TripleSystem::normalized(static_cast<Point>(spec.length()), std::move(blocks));
}

GddReport verify_gdd(const CodeSpec& spec, const Limits& limits)
{
    const auto design = weight3_design(spec, limits);
    const auto part = column_partition(spec);
    const auto geo = geometry_of(spec);
    const auto v = static_cast<std::size_t>(spec.length());
    const std::int64_t T = static_cast<std::int64_t>(spec.T());

    GddReport report;
    report.groupCount = spec.M();
    report.groupSize = spec.binary() ? spec.T() + 1 : spec.T();

    std::vector<std::uint32_t> all(v * v, 0);      // all blocks
    std::vector<std::uint32_t> interior(v * v, 0); // interior blocks only
    std::vector<std::uint32_t> mixed(v * v, 0);    // mixed blocks only
    std::vector<std::uint64_t> perLine(geo.line_count(), 0);

    bool shapesOk = true;
    for (const auto& b : design->blocks()) {
        BlockClass cls;
        try {
            cls = classify_block(part, geo, b);
        } catch (const DomainError&) {
            shapesOk = false;
            continue;
        }
        auto bump = [&](std::vector<std::uint32_t>& m) {
            ++m[b[0] * v + b[1]];
            ++m[b[0] * v + b[2]];
            ++m[b[1] * v + b[2]];
        };
        bump(all);
        if (std::holds_alternative<block_class::Interior>(cls)) {
            ++report.interiorBlocks;
            bump(interior);
        } else if (std::holds_alternative<block_class::Mixed>(cls)) {
            ++report.mixedBlocks;
            bump(mixed);
        } else {
            ++report.transversalBlocks;
            ++perLine[std::get<block_class::Transversal>(cls).line];
        }
    }

    // Constant value of `m` over a family of pairs, or -1.
    auto constant_over = [&](const std::vector<std::uint32_t>& m, auto&& selectPair) {
        std::int64_t value = -2;
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = a + 1; b < v; ++b) {
                if (!selectPair(a, b))
                    continue;
                const auto c = static_cast<std::int64_t>(m[a * v + b]);
                if (value == -2)
                    value = c;
                else if (value != c)
                    return std::int64_t{-1};
            }
        return value == -2 ? std::int64_t{0} : value;
    };
    const auto& groupOf = part.groupOf;
    auto sameGroup = [&](std::size_t a, std::size_t b) {
        return groupOf[a] != GroupPartition::kZero && groupOf[a] == groupOf[b];
    };
    auto crossGroup = [&](std::size_t a, std::size_t b) {
        return groupOf[a] != GroupPartition::kZero && groupOf[b] != GroupPartition::kZero &&
               groupOf[a] != groupOf[b];
    };
    auto bothZero = [&](std::size_t a, std::size_t b) {
        return groupOf[a] == GroupPartition::kZero && groupOf[b] == GroupPartition::kZero;
    };

    report.lambdaSameGroup = constant_over(all, sameGroup);
    report.lambdaCrossGroup = constant_over(all, crossGroup);

    std::int64_t linesConst = -2;
    for (auto c : perLine) {
        const auto ci = static_cast<std::int64_t>(c);
        linesConst = linesConst == -2 || linesConst == ci ? ci : -1;
    }
    report.transversalPerLine = linesConst == -2 ? 0 : linesConst;

    bool ok = shapesOk;
    if (spec.binary()) {
        const std::int64_t lambdaInterior = constant_over(interior, bothZero);
        // Interior pairs must not be reached by any other block type.
        const std::int64_t lambdaZeroAll = constant_over(all, bothZero);
        report.interiorDesignParams = std::array<std::int64_t, 3>{T, 3, lambdaInterior};
        report.mixedPerSamePair = constant_over(mixed, sameGroup);

        const std::int64_t expectedInterior = T >= 3 ? T - 2 : 0;
        ok = ok && lambdaInterior == expectedInterior && lambdaZeroAll == expectedInterior;
        ok = ok && report.mixedPerSamePair == T && report.lambdaSameGroup == T;
        // With a single group there are no cross pairs and no lines.
        if (part.groups.size() > 1) {
            ok = ok && report.lambdaCrossGroup == T + 1;
            ok = ok && report.transversalPerLine == (T + 1) * (T + 1) * (T + 1);
        }
    } else {
        ok = ok && report.lambdaSameGroup == T - 2 && report.lambdaCrossGroup == T;
        ok = ok && report.transversalPerLine == T * T * T;
    }
    report.passed = ok;
    return report;
}

} // namespace stsrank
