#include "stsrank/designs.hpp"

#include "stsrank/error.hpp"

#include <algorithm>

namespace stsrank {

namespace {

std::string block_string(const Block& b)
{
    return "{" + std::to_string(b[0]) + "," + std::to_string(b[1]) + "," + std::to_string(b[2]) + "}";
}

} // namespace

TripleSystem::TripleSystem(Point v, std::vector<Block> blocks) : v_(v), blocks_(std::move(blocks))
{
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& b = blocks_[i];
        if (!(b[0] < b[1] && b[1] < b[2]))
            throw DomainError("block " + block_string(b) + " is not strictly increasing");
        if (b[2] >= v_)
            throw DomainError("block " + block_string(b) + " has a point outside 0.." + std::to_string(v_ - 1));
        if (i > 0 && !(blocks_[i - 1] < b))
            throw DomainError("block list is not strictly increasing at " + block_string(b));
    }
}

TripleSystem TripleSystem::normalized(Point v, std::vector<Block> blocks)
{
    for (auto& b : blocks)
        std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return TripleSystem(v, std::move(blocks));
}

bool TripleSystem::contains(const Block& b) const
{
    return std::binary_search(blocks_.begin(), blocks_.end(), b);
}

bool TripleSystem::subset_of(const TripleSystem& other) const
{
    return v_ == other.v_ &&
           std::includes(other.blocks_.begin(), other.blocks_.end(), blocks_.begin(), blocks_.end());
}

TripleSystem TripleSystem::relabeled(std::span<const Point> perm) const
{
    if (perm.size() != v_)
        throw ParameterError("relabeling has degree " + std::to_string(perm.size()) + ", expected " +
                             std::to_string(v_));
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_)
        out.push_back({perm[b[0]], perm[b[1]], perm[b[2]]});
    return normalized(v_, std::move(out));
}

StsCertificate validate_sts(const TripleSystem& d)
{
    const Point v = d.points();
    std::vector<unsigned> cover(static_cast<std::size_t>(v) * v, 0);
    for (const auto& b : d.blocks()) {
        ++cover[b[0] * v + b[1]];
        ++cover[b[0] * v + b[2]];
        ++cover[b[1] * v + b[2]];
    }
    StsCertificate cert;
    for (Point a = 0; a < v; ++a)
        for (Point b = a + 1; b < v; ++b)
            if (cover[a * v + b] != 1) {
                cert.failingPair = PairCoverage{a, b, cover[a * v + b]};
                return cert;
            }
    cert.isSts = true;
    return cert;
}

FieldMatrix incidence_matrix(const TripleSystem& d, int p)
{
    if (d.blocks().empty())
        throw DomainError("incidence matrix of a system without blocks");
    FieldMatrix m(p, d.size(), d.points());
    for (std::size_t r = 0; r < d.size(); ++r)
        for (auto x : d.blocks()[r])
            m.set(r, x, 1 % p);
    return m;
}

std::size_t sts_rank(const TripleSystem& d, int p)
{
    if (!is_prime(p))
        throw ParameterError("rank field must be prime, got " + std::to_string(p));
    const auto cert = validate_sts(d);
    if (!cert.isSts)
        throw DomainError("not a Steiner triple system: pair {" + std::to_string(cert.failingPair->a) + "," +
                          std::to_string(cert.failingPair->b) + "} covered " +
                          std::to_string(cert.failingPair->count) + " times");
    return matrix_rank(incidence_matrix(d, p));
}

namespace classic {

TripleSystem projective_space(unsigned dim)
{
    if (dim < 1 || dim > 10)
        throw ParameterError("projective dimension must lie in [1, 10]");
    const Point q = (Point{1} << (dim + 1)) - 1;
    std::vector<Block> blocks;
    for (Point x = 1; x <= q; ++x)
        for (Point y = x + 1; y <= q; ++y) {
            const Point z = x ^ y;
            if (z > y)
                blocks.push_back({x - 1, y - 1, z - 1});
        }
    return TripleSystem::normalized(q, std::move(blocks));
}

TripleSystem affine_space(unsigned dim)
{
    if (dim < 1 || dim > 6)
        throw ParameterError("affine dimension must lie in [1, 6]");
    Point v = 1;
    for (unsigned i = 0; i < dim; ++i)
        v *= 3;
    auto third = [dim](Point x, Point y) {
        Point z = 0;
        Point scale = 1;
        for (unsigned i = 0; i < dim; ++i) {
            const Point a = x % 3, b = y % 3;
            z += ((6 - a - b) % 3) * scale;
            x /= 3;
            y /= 3;
            scale *= 3;
        }
        return z;
    };
    std::vector<Block> blocks;
    for (Point x = 0; x < v; ++x)
        for (Point y = x + 1; y < v; ++y) {
            const Point z = third(x, y);
            if (z > y)
                blocks.push_back({x, y, z});
        }
    return TripleSystem::normalized(v, std::move(blocks));
}

TripleSystem fano()
{
    return projective_space(2);
}

TripleSystem affine_plane_3()
{
    return affine_space(2);
}

} // namespace classic

} // namespace stsrank
