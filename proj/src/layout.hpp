#pragma once

// Column bookkeeping shared by composition and decomposition.

#include "stsrank/geometry.hpp"

#include <cstdint>
#include <vector>

namespace stsrank::detail {

struct Layout {
    explicit Layout(const CodeSpec& spec)
        : part(column_partition(spec)), geo(geometry_of(spec)), localIndex(spec.length(), 0),
          groupAtPoint(geo.points.size(), 0)
    {
        for (std::size_t j = 0; j < part.zeroSet.size(); ++j)
            localIndex[part.zeroSet[j]] = static_cast<std::uint32_t>(j);
        for (const auto& g : part.groups)
            for (std::size_t j = 0; j < g.size(); ++j)
                localIndex[g[j]] = static_cast<std::uint32_t>(j);
        for (std::size_t g = 0; g < part.groupPoint.size(); ++g)
            groupAtPoint[part.groupPoint[g]] = static_cast<std::uint32_t>(g);
    }

    GroupPartition part;
    Geometry geo;
    std::vector<std::uint32_t> localIndex;   // column -> position inside V_0 or its group
    std::vector<std::uint32_t> groupAtPoint; // geometry point -> group
};

} // namespace stsrank::detail

#include "stsrank/composer.hpp"

namespace stsrank::detail {

/// compose() against a precomputed layout.
TripleSystem compose_with(const Recipe& r, const CodeSpec& spec, const Layout& layout);

} // namespace stsrank::detail
