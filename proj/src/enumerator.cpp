#include "stsrank/enumerator.hpp"

#include "stsrank/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace stsrank {

namespace {

using Solution = std::vector<std::uint32_t>;

class PairCover {
public:
    explicit PairCover(const TripleSystem& d) : v_(d.points()), blocks_(d.blocks())
    {
        const std::size_t pairs = static_cast<std::size_t>(v_) * (v_ - (v_ > 0 ? 1 : 0)) / 2;
        byPair_.resize(pairs);
        blockPairs_.resize(blocks_.size());
        for (std::uint32_t i = 0; i < blocks_.size(); ++i) {
            const auto& b = blocks_[i];
            blockPairs_[i] = {pair_id(b[0], b[1]), pair_id(b[0], b[2]), pair_id(b[1], b[2])};
            for (auto p : blockPairs_[i])
                byPair_[p].push_back(i);
        }
        covered_.assign(pairs, false);
        alive_.assign(blocks_.size(), true);
        avail_.resize(pairs);
        for (std::size_t p = 0; p < pairs; ++p)
            avail_[p] = static_cast<std::uint32_t>(byPair_[p].size());
        remaining_ = pairs;
    }

    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    /// Uncovered pair with the fewest usable blocks; kNone when everything is covered.
    std::size_t choose_pair() const
    {
        std::size_t best = kNone;
        std::uint32_t bestCount = std::numeric_limits<std::uint32_t>::max();
        for (std::size_t p = 0; p < covered_.size(); ++p) {
            if (covered_[p] || avail_[p] >= bestCount)
                continue;
            best = p;
            bestCount = avail_[p];
            if (bestCount == 0)
                break;
        }
        return best;
    }

    std::vector<std::uint32_t> candidates(std::size_t pair) const
    {
        std::vector<std::uint32_t> out;
        for (auto b : byPair_[pair])
            if (alive_[b])
                out.push_back(b);
        return out;
    }

    void search(std::vector<Solution>& out)
    {
        const std::size_t p = choose_pair();
        if (p == kNone) {
            Solution s = chosen_;
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
            return;
        }
        for (auto b : candidates(p)) {
            const std::size_t mark = choose(b);
            search(out);
            undo(mark);
        }
    }

    /// Takes block b; returns an undo mark.
    std::size_t choose(std::uint32_t b)
    {
        const std::size_t mark = killed_.size();
        chosen_.push_back(b);
        for (auto p : blockPairs_[b]) {
            covered_[p] = true;
            --remaining_;
            for (auto other : byPair_[p])
                if (alive_[other])
                    kill(other);
        }
        return mark;
    }

    void undo(std::size_t mark)
    {
        const std::uint32_t b = chosen_.back();
        chosen_.pop_back();
        while (killed_.size() > mark) {
            const auto k = killed_.back();
            killed_.pop_back();
            alive_[k] = true;
            for (auto p : blockPairs_[k])
                ++avail_[p];
        }
        for (auto p : blockPairs_[b]) {
            covered_[p] = false;
            ++remaining_;
        }
    }

    std::size_t pair_count() const noexcept { return covered_.size(); }

private:
    std::size_t pair_id(Point a, Point b) const
    {
        // a < b; row-major index into the strict upper triangle
        return static_cast<std::size_t>(a) * (2 * v_ - a - 1) / 2 + (b - a - 1);
    }

    void kill(std::uint32_t b)
    {
        alive_[b] = false;
        killed_.push_back(b);
        for (auto p : blockPairs_[b])
            --avail_[p];
    }

    Point v_;
    const std::vector<Block>& blocks_;
    std::vector<std::vector<std::uint32_t>> byPair_;
    std::vector<std::array<std::size_t, 3>> blockPairs_;
    std::vector<bool> covered_;
    std::vector<bool> alive_;
    std::vector<std::uint32_t> avail_;
    std::vector<std::uint32_t> killed_;
    std::vector<std::uint32_t> chosen_;
    std::size_t remaining_ = 0;
};

} // namespace

std::vector<std::vector<std::uint32_t>> exact_cover_solutions(const TripleSystem& d, const Limits& limits, Exec exec)
{
    if (d.size() > limits.oracleBlockCap)
        throw ResourceError("exact-cover oracle input has " + std::to_string(d.size()) + " blocks, cap is " +
                            std::to_string(limits.oracleBlockCap));

    std::vector<Solution> solutions;
    PairCover root(d);
    const std::size_t first = root.choose_pair();
    if (exec == Exec::Serial || first == PairCover::kNone) {
        root.search(solutions);
    } else {
        // Branch on the blocks through the most constrained pair.
        const auto branches = root.candidates(first);
        std::vector<std::vector<Solution>> perBranch(branches.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(branches.size()); ++i) {
            PairCover local(d);
            local.choose(branches[i]);
            local.search(perBranch[i]);
        }
        for (auto& part : perBranch)
            for (auto& s : part)
                solutions.push_back(std::move(s));
    }
    std::sort(solutions.begin(), solutions.end());
    return solutions;
}

std::uint64_t exact_cover_sts(const TripleSystem& d, const std::function<void(const TripleSystem&)>& sink,
                              const Limits& limits, Exec exec)
{
    const auto solutions = exact_cover_solutions(d, limits, exec);
    if (sink) {
        for (const auto& s : solutions) {
            std::vector<Block> blocks;
            blocks.reserve(s.size());
            for (auto i : s)
                blocks.push_back(d.blocks()[i]);
            sink(TripleSystem(d.points(), std::move(blocks)));
        }
    }
    return solutions.size();
}

} // namespace stsrank
