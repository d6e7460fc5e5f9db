#include "layout.hpp"
#include "stsrank/composer.hpp"
#include "stsrank/error.hpp"
#include "stsrank/geometry.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace stsrank {

namespace {

Block sorted_block(Point a, Point b, Point c)
{
    Block blk{a, b, c};
    std::sort(blk.begin(), blk.end());
    return blk;
}

bool is_permutation_of_range(const std::vector<std::uint32_t>& v)
{
    std::vector<bool> seen(v.size(), false);
    for (auto x : v) {
        if (x >= v.size() || seen[x])
            return false;
        seen[x] = true;
    }
    return true;
}

void add_transversal(const detail::Layout& L, const std::array<std::uint32_t, 3>& line, const LatinSquare& sq,
                     std::vector<Block>& out)
{
    const auto& g0 = L.part.groups[L.groupAtPoint[line[0]]];
    const auto& g1 = L.part.groups[L.groupAtPoint[line[1]]];
    const auto& g2 = L.part.groups[L.groupAtPoint[line[2]]];
    for (unsigned r = 0; r < sq.order; ++r)
        for (unsigned c = 0; c < sq.order; ++c)
            out.push_back(sorted_block(g0[r], g1[c], g2[sq.at(r, c)]));
}

void check_lines(const CodeSpec& spec, const detail::Layout& L, const std::vector<LatinSquare>& perLine,
                 std::uint64_t order)
{
    if (perLine.size() != L.geo.line_count())
        throw StructureError("recipe for " + spec.label() + " needs " + std::to_string(L.geo.line_count()) +
                             " Latin squares, got " + std::to_string(perLine.size()));
    for (std::size_t i = 0; i < perLine.size(); ++i)
        if (perLine[i].order != order || !perLine[i].valid())
            throw StructureError("line " + std::to_string(i) + ": not a Latin square of order " +
                                 std::to_string(order));
}

TripleSystem compose_binary(const BinaryRecipe& r, const CodeSpec& spec, const detail::Layout& L)
{
    const std::uint64_t T = spec.T();
    if (r.interior.points() != T || !validate_sts(r.interior).isSts)
        throw StructureError("interior must be an STS(" + std::to_string(T) + ")");
    if (r.perGroup.size() != spec.M())
        throw StructureError("recipe needs one factorization per group");
    check_lines(spec, L, r.perLine, T + 1);

    std::vector<Block> blocks;
    for (const auto& b : r.interior.blocks())
        blocks.push_back(sorted_block(L.part.zeroSet[b[0]], L.part.zeroSet[b[1]], L.part.zeroSet[b[2]]));

    for (std::size_t g = 0; g < r.perGroup.size(); ++g) {
        const auto& gf = r.perGroup[g];
        if (gf.factorization.vertexCount != T + 1 || gf.factorization.factors.size() != T ||
            !gf.factorization.valid())
            throw StructureError("group " + std::to_string(g) + ": not a 1-factorization of K_" +
                                 std::to_string(T + 1));
        if (gf.factorOf.size() != T || !is_permutation_of_range(gf.factorOf))
            throw StructureError("group " + std::to_string(g) + ": zero-point assignment is not a bijection");
        const auto& cols = L.part.groups[g];
        for (std::size_t x = 0; x < T; ++x)
            for (const auto& [a, b] : gf.factorization.factors[gf.factorOf[x]])
                blocks.push_back(sorted_block(L.part.zeroSet[x], cols[a], cols[b]));
    }

    for (std::size_t i = 0; i < r.perLine.size(); ++i)
        add_transversal(L, L.geo.lines[i], r.perLine[i], blocks);
    return TripleSystem::normalized(static_cast<Point>(spec.length()), std::move(blocks));
}

TripleSystem compose_ternary(const TernaryRecipe& r, const CodeSpec& spec, const detail::Layout& L)
{
    const std::uint64_t T = spec.T();
    if (r.perGroup.size() != spec.M())
        throw StructureError("recipe needs one STS per group");
    check_lines(spec, L, r.perLine, T);

    std::vector<Block> blocks;
    for (std::size_t g = 0; g < r.perGroup.size(); ++g) {
        const auto& sts = r.perGroup[g];
        if (sts.points() != T || !validate_sts(sts).isSts)
            throw StructureError("group " + std::to_string(g) + ": not an STS(" + std::to_string(T) + ")");
        const auto& cols = L.part.groups[g];
        for (const auto& b : sts.blocks())
            blocks.push_back(sorted_block(cols[b[0]], cols[b[1]], cols[b[2]]));
    }
    for (std::size_t i = 0; i < r.perLine.size(); ++i)
        add_transversal(L, L.geo.lines[i], r.perLine[i], blocks);
    return TripleSystem::normalized(static_cast<Point>(spec.length()), std::move(blocks));
}

// Cells of one Latin square being read back from transversal blocks.
struct SquareReader {
    explicit SquareReader(unsigned order) : sq{order, std::vector<std::uint8_t>(order * order, 0)},
                                            filled(order * order, false) {}

    void put(std::uint32_t r, std::uint32_t c, std::uint32_t s, std::size_t line)
    {
        const auto cell = r * sq.order + c;
        if (filled[cell])
            throw TheoremViolation("line " + std::to_string(line) + ": cell (" + std::to_string(r) + "," +
                                   std::to_string(c) + ") covered twice");
        filled[cell] = true;
        sq.cells[cell] = static_cast<std::uint8_t>(s);
    }

    LatinSquare finish(std::size_t line) const
    {
        if (std::find(filled.begin(), filled.end(), false) != filled.end() || !sq.valid())
            throw TheoremViolation("line " + std::to_string(line) + ": transversal blocks are not a TD[3;" +
                                   std::to_string(sq.order) + "]");
        return sq;
    }

    LatinSquare sq;
    std::vector<bool> filled;
};

} // namespace

TripleSystem detail::compose_with(const Recipe& r, const CodeSpec& spec, const Layout& L)
{
    if (spec.binary()) {
        const auto* b = std::get_if<BinaryRecipe>(&r);
        if (!b)
            throw StructureError("a binary spec needs a binary recipe");
        return compose_binary(*b, spec, L);
    }
    const auto* t = std::get_if<TernaryRecipe>(&r);
    if (!t)
        throw StructureError("a ternary spec needs a ternary recipe");
    return compose_ternary(*t, spec, L);
}

TripleSystem compose(const Recipe& r, const CodeSpec& spec)
{
    return detail::compose_with(r, spec, detail::Layout(spec));
}

Recipe decompose_sts(const TripleSystem& s, const CodeSpec& spec, const Limits& limits)
{
    if (s.points() != spec.length())
        throw DomainError("system has " + std::to_string(s.points()) + " points, " + spec.label() + " has length " +
                          std::to_string(spec.length()));
    if (!validate_sts(s).isSts)
        throw DomainError("input is not a Steiner triple system");
    const auto design = weight3_design(spec, limits);
    for (const auto& b : s.blocks())
        if (!design->contains(b))
            throw ContainmentError("block {" + std::to_string(b[0]) + "," + std::to_string(b[1]) + "," +
                                   std::to_string(b[2]) + "} is not a weight-3 codeword support of " +
                                   spec.label());

    const detail::Layout L(spec);
    const std::uint64_t T = spec.T();
    const std::uint64_t M = spec.M();
    const unsigned order = static_cast<unsigned>(spec.binary() ? T + 1 : T);

    std::vector<Block> interior;
    std::vector<std::vector<Block>> groupBlocks(M);
    // (group, zero point) -> edges
    std::vector<std::vector<std::vector<Edge>>> edges(spec.binary() ? M : 0, std::vector<std::vector<Edge>>(T));
    std::vector<SquareReader> readers(L.geo.line_count(), SquareReader(order));

    for (const auto& b : s.blocks()) {
        const BlockClass cls = classify_block(L.part, L.geo, b);
        if (std::holds_alternative<block_class::Interior>(cls)) {
            interior.push_back({L.localIndex[b[0]], L.localIndex[b[1]], L.localIndex[b[2]]});
        } else if (const auto* m = std::get_if<block_class::Mixed>(&cls)) {
            if (m->zeroPoint) {
                Point y[2];
                int k = 0;
                for (auto p : b)
                    if (p != *m->zeroPoint)
                        y[k++] = L.localIndex[p];
                edges[m->group][L.localIndex[*m->zeroPoint]].push_back({std::min(y[0], y[1]), std::max(y[0], y[1])});
            } else {
                groupBlocks[m->group].push_back({L.localIndex[b[0]], L.localIndex[b[1]], L.localIndex[b[2]]});
            }
        } else {
            const auto line = std::get<block_class::Transversal>(cls).line;
            const auto& pts = L.geo.lines[line];
            std::uint32_t role[3] = {0, 0, 0};
            for (auto p : b) {
                const auto g = static_cast<std::uint32_t>(L.part.groupOf[p]);
                for (int k = 0; k < 3; ++k)
                    if (L.part.groupPoint[g] == pts[k])
                        role[k] = L.localIndex[p];
            }
            readers[line].put(role[0], role[1], role[2], line);
        }
    }

    std::vector<LatinSquare> perLine;
    perLine.reserve(readers.size());
    for (std::size_t i = 0; i < readers.size(); ++i)
        perLine.push_back(readers[i].finish(i));

    if (!spec.binary()) {
        TernaryRecipe r;
        for (std::size_t g = 0; g < M; ++g) {
            TripleSystem sub = TripleSystem::normalized(static_cast<Point>(T), std::move(groupBlocks[g]));
            if (!validate_sts(sub).isSts)
                throw TheoremViolation("blocks inside group " + std::to_string(g) + " do not form an STS");
            r.perGroup.push_back(std::move(sub));
        }
        r.perLine = std::move(perLine);
        return r;
    }

    BinaryRecipe r;
    r.interior = TripleSystem::normalized(static_cast<Point>(T), std::move(interior));
    if (!validate_sts(r.interior).isSts)
        throw TheoremViolation("blocks inside V_0 do not form an STS");
    for (std::size_t g = 0; g < M; ++g) {
        std::vector<std::vector<Edge>> factors = edges[g];
        for (auto& f : factors) {
            if (f.size() != order / 2)
                throw TheoremViolation("mixed blocks of group " + std::to_string(g) + " do not split into 1-factors");
            std::sort(f.begin(), f.end());
        }
        GroupFactorization gf;
        gf.factorization = OneFactorization::canonical(order, factors);
        if (!gf.factorization.valid())
            throw TheoremViolation("mixed blocks of group " + std::to_string(g) + " are not a 1-factorization");
        std::map<std::vector<Edge>, std::uint32_t> position;
        for (std::size_t i = 0; i < gf.factorization.factors.size(); ++i)
            position[gf.factorization.factors[i]] = static_cast<std::uint32_t>(i);
        for (const auto& f : factors)
            gf.factorOf.push_back(position.at(f));
        r.perGroup.push_back(std::move(gf));
    }
    r.perLine = std::move(perLine);
    return r;
}

} // namespace stsrank
