#include "stsrank/iso.hpp"

#include "layout.hpp"
#include "stsrank/counting.hpp"
#include "stsrank/error.hpp"
#include "stsrank/geometry.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace stsrank {

Permutation Permutation::identity(Point v)
{
    Permutation p;
    p.images.resize(v);
    std::iota(p.images.begin(), p.images.end(), Point{0});
    return p;
}

Permutation Permutation::from_images(std::vector<Point> images)
{
    std::vector<bool> seen(images.size(), false);
    for (auto x : images) {
        if (x >= images.size() || seen[x])
            throw ParameterError("permutation images are not a bijection");
        seen[x] = true;
    }
    return Permutation{std::move(images)};
}

Permutation Permutation::operator*(const Permutation& other) const
{
    if (other.images.size() != images.size())
        throw ParameterError("composing permutations of different degree");
    Permutation out;
    out.images.resize(images.size());
    for (std::size_t x = 0; x < images.size(); ++x)
        out.images[x] = images[other.images[x]];
    return out;
}

Permutation Permutation::inverse() const
{
    Permutation out;
    out.images.resize(images.size());
    for (std::size_t x = 0; x < images.size(); ++x)
        out.images[images[x]] = static_cast<Point>(x);
    return out;
}

namespace {

void check_canon_input(const TripleSystem& d, const Limits& limits)
{
    const Point cap = limits.longMode ? std::max<Point>(limits.canonVertexCap, 27) : limits.canonVertexCap;
    if (d.points() > cap)
        throw ResourceError("canonical form needs v <= " + std::to_string(cap) + ", got " +
                            std::to_string(d.points()));
    if (!validate_sts(d).isSts)
        throw DomainError("canonical forms are computed for Steiner triple systems only");
}

using Cells = std::vector<std::vector<Point>>;

// Search tree over ordered partitions: refine, individualize a point of the
// first smallest non-singleton cell, recurse. Every leaf is a labeling.
class CanonSearch {
public:
    explicit CanonSearch(const TripleSystem& d) : d_(d), v_(d.points()), third_(std::size_t{v_} * v_, 0), through_(v_)
    {
        for (const auto& b : d.blocks()) {
            third_[b[0] * v_ + b[1]] = third_[b[1] * v_ + b[0]] = b[2];
            third_[b[0] * v_ + b[2]] = third_[b[2] * v_ + b[0]] = b[1];
            third_[b[1] * v_ + b[2]] = third_[b[2] * v_ + b[1]] = b[0];
            through_[b[0]].push_back({b[1], b[2]});
            through_[b[1]].push_back({b[0], b[2]});
            through_[b[2]].push_back({b[0], b[1]});
        }
    }

    void run()
    {
        if (v_ == 0) {
            best_ = {};
            leaves_.push_back({});
            return;
        }
        // Initial cells by the number of Pasch configurations centred at each point.
        std::map<std::uint64_t, std::vector<Point>> byInvariant;
        for (Point x = 0; x < v_; ++x)
            byInvariant[pasch_count(x)].push_back(x);
        Cells cells;
        for (auto& [inv, pts] : byInvariant)
            cells.push_back(std::move(pts));
        search(std::move(cells));
    }

    const std::vector<Block>& best() const { return best_; }
    /// Labelings (point -> new label) reaching the best block list.
    const std::vector<std::vector<Point>>& leaves() const { return leaves_; }

private:
    std::uint64_t pasch_count(Point x) const
    {
        std::uint64_t count = 0;
        for (Point a = 0; a < v_; ++a) {
            if (a == x)
                continue;
            const Point b = third_[x * v_ + a];
            for (Point c = 0; c < v_; ++c) {
                if (c == x || c == a || c == b)
                    continue;
                const Point dd = third_[x * v_ + c];
                if (third_[a * v_ + c] == third_[b * v_ + dd])
                    ++count;
            }
        }
        return count;
    }

    void refine(Cells& cells) const
    {
        std::vector<std::uint32_t> cellOf(v_);
        for (;;) {
            for (std::uint32_t i = 0; i < cells.size(); ++i)
                for (auto x : cells[i])
                    cellOf[x] = i;
            bool changed = false;
            Cells next;
            next.reserve(v_);
            for (auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(std::move(cell));
                    continue;
                }
                std::vector<std::pair<std::vector<std::uint64_t>, Point>> sig;
                sig.reserve(cell.size());
                for (auto x : cell) {
                    std::vector<std::uint64_t> s;
                    s.reserve(through_[x].size());
                    for (auto [y, z] : through_[x]) {
                        const auto cy = cellOf[y], cz = cellOf[z];
                        s.push_back(std::uint64_t{std::min(cy, cz)} * v_ + std::max(cy, cz));
                    }
                    std::sort(s.begin(), s.end());
                    sig.push_back({std::move(s), x});
                }
                std::sort(sig.begin(), sig.end());
                std::size_t start = 0;
                for (std::size_t i = 1; i <= sig.size(); ++i) {
                    if (i == sig.size() || sig[i].first != sig[start].first) {
                        std::vector<Point> part;
                        for (std::size_t k = start; k < i; ++k)
                            part.push_back(sig[k].second);
                        next.push_back(std::move(part));
                        start = i;
                    }
                }
                changed = changed || next.back().size() != cell.size();
            }
            cells = std::move(next);
            if (!changed)
                return;
        }
    }

    void search(Cells cells)
    {
        refine(cells);
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1 && (target == cells.size() || cells[i].size() < cells[target].size()))
                target = i;
        if (target == cells.size()) {
            leaf(cells);
            return;
        }
        for (auto x : cells[target]) {
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i != target) {
                    child.push_back(cells[i]);
                    continue;
                }
                child.push_back({x});
                std::vector<Point> rest;
                for (auto y : cells[i])
                    if (y != x)
                        rest.push_back(y);
                child.push_back(std::move(rest));
            }
            search(std::move(child));
        }
    }

    void leaf(const Cells& cells)
    {
        std::vector<Point> label(v_);
        for (std::size_t i = 0; i < cells.size(); ++i)
            label[cells[i][0]] = static_cast<Point>(i);
        std::vector<Block> blocks;
        blocks.reserve(d_.size());
        for (const auto& b : d_.blocks()) {
            Block nb{label[b[0]], label[b[1]], label[b[2]]};
            std::sort(nb.begin(), nb.end());
            blocks.push_back(nb);
        }
        std::sort(blocks.begin(), blocks.end());
        if (leaves_.empty() || blocks < best_) {
            best_ = std::move(blocks);
            leaves_.clear();
            leaves_.push_back(std::move(label));
        } else if (blocks == best_) {
            leaves_.push_back(std::move(label));
        }
    }

    const TripleSystem& d_;
    Point v_;
    std::vector<Point> third_;
    std::vector<std::vector<std::pair<Point, Point>>> through_;
    std::vector<Block> best_;
    std::vector<std::vector<Point>> leaves_;
};

std::vector<Permutation> subgroup_closure(const std::vector<Permutation>& gens, Point v)
{
    std::set<Permutation> seen{Permutation::identity(v)};
    std::vector<Permutation> frontier{Permutation::identity(v)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& h : frontier)
            for (const auto& g : gens) {
                Permutation gh = g * h;
                if (seen.insert(gh).second)
                    next.push_back(std::move(gh));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

class MembershipTest {
public:
    explicit MembershipTest(const CodeSpec& spec) : spec_(spec), layout_(spec) {}

    bool operator()(const Permutation& g) const
    {
        const auto& part = layout_.part;
        if (g.degree() != spec_.length())
            throw ParameterError("permutation of degree " + std::to_string(g.degree()) + " tested against " +
                                 spec_.label() + " of length " + std::to_string(spec_.length()));
        std::vector<std::int64_t> groupImage(part.groups.size(), -1);
        for (Point x = 0; x < g.degree(); ++x) {
            const auto gx = part.groupOf[x];
            const auto gy = part.groupOf[g.images[x]];
            if ((gx == GroupPartition::kZero) != (gy == GroupPartition::kZero))
                return false;
            if (gx == GroupPartition::kZero)
                continue;
            if (groupImage[gx] < 0)
                groupImage[gx] = gy;
            else if (groupImage[gx] != gy)
                return false;
        }
        const auto& geo = layout_.geo;
        std::vector<std::uint32_t> pointImage(geo.points.size());
        for (std::size_t grp = 0; grp < groupImage.size(); ++grp)
            pointImage[part.groupPoint[grp]] = part.groupPoint[static_cast<std::size_t>(groupImage[grp])];
        for (const auto& line : geo.lines) {
            const auto a = pointImage[line[0]], b = pointImage[line[1]], c = pointImage[line[2]];
            if (geo.third_point(a, b) != c)
                return false;
        }
        return true;
    }

private:
    CodeSpec spec_;
    detail::Layout layout_;
};

} // namespace

Permutation canonical_labeling(const TripleSystem& d, const Limits& limits)
{
    check_canon_input(d, limits);
    CanonSearch search(d);
    search.run();
    return Permutation{search.leaves().front()};
}

TripleSystem canonical_form(const TripleSystem& d, const Limits& limits)
{
    check_canon_input(d, limits);
    CanonSearch search(d);
    search.run();
    return TripleSystem(d.points(), search.best());
}

AutomorphismGroup automorphism_group(const TripleSystem& d, const Limits& limits)
{
    check_canon_input(d, limits);
    CanonSearch search(d);
    search.run();
    // Leaves λ with d^λ minimal form one coset λ0 Aut(d); λ0^{-1} λ runs over Aut(d).
    const Permutation inv0 = Permutation{search.leaves().front()}.inverse();
    AutomorphismGroup out;
    for (const auto& leaf : search.leaves())
        out.elements.push_back(inv0 * Permutation{leaf});
    std::sort(out.elements.begin(), out.elements.end());
    out.order = out.elements.size();

    std::set<Permutation> generated{Permutation::identity(d.points())};
    for (const auto& g : out.elements) {
        if (generated.count(g))
            continue;
        out.generators.push_back(g);
        const auto closure = subgroup_closure(out.generators, d.points());
        generated = std::set<Permutation>(closure.begin(), closure.end());
        if (generated.size() == out.elements.size())
            break;
    }
    return out;
}

bool code_aut_membership(const Permutation& g, const CodeSpec& spec)
{
    return MembershipTest(spec)(g);
}

IsoClassReport iso_classes(const std::vector<TripleSystem>& systems, const CodeSpec& spec, const Limits& limits)
{
    const auto design = weight3_design(spec, limits);
    for (const auto& s : systems) {
        if (s.points() != spec.length() || !s.subset_of(*design))
            throw ContainmentError("a system is not contained in the weight-3 design of " + spec.label());
        check_canon_input(s, limits);
    }
    {
        std::vector<const TripleSystem*> sorted;
        for (const auto& s : systems)
            sorted.push_back(&s);
        std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return *a < *b; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (*sorted[i] == *sorted[i - 1])
                throw DomainError("duplicate system in iso-class input");
    }

    std::vector<TripleSystem> canon(systems.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(systems.size()); ++i) {
        try {
            canon[i] = canonical_form(systems[i], limits);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    // canonical form -> (first input index, multiplicity)
    std::map<TripleSystem, std::pair<std::size_t, std::uint64_t>> classes;
    for (std::size_t i = 0; i < canon.size(); ++i) {
        auto [it, inserted] = classes.try_emplace(canon[i], i, 0);
        ++it->second.second;
    }

    IsoClassReport report;
    report.totalDistinct = systems.size();
    report.autCode = aut_code_order(spec);
    const MembershipTest member(spec);
    std::map<std::size_t, std::uint64_t> ranks;
    for (const auto& [form, info] : classes) {
        const TripleSystem& rep = systems[info.first];
        const auto aut = automorphism_group(rep, limits);
        std::uint64_t stab = 0;
        for (const auto& g : aut.elements)
            stab += member(g) ? 1 : 0;
        IsoClass c;
        c.canonical = form;
        c.multiplicity = info.second;
        c.autOrder = aut.order;
        c.stabilizerOrder = stab;
        c.rank = sts_rank(rep, spec.prime());
        report.massSum += BigRational(report.autCode, c.stabilizerOrder);
        ranks[c.rank] += c.multiplicity;
        report.classes.push_back(std::move(c));
    }
    report.massBalanced = report.massSum == BigRational(report.totalDistinct);
    report.rankHistogram.assign(ranks.begin(), ranks.end());
    return report;
}

} // namespace stsrank
