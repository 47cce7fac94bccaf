#pragma once

#include <cstdint>

#include "srcrank/graph.hpp"

namespace srcrank {

// Deterministic synthetic networks standing in for the two study topologies.

// Power-grid-like: n points in the unit square joined by their Euclidean
// minimum spanning tree plus the shortest remaining near-neighbor edges up
// to m edges. Connected, locally tree-like, large diameter, small maximum
// degree.
Graph synthetic_power_grid(int n, int m, uint64_t seed);

// Internet-AS-like: heavy-tailed degree sequence (about a third degree-1
// nodes, power-law regional tier, planted transit hubs) wired as a provider
// hierarchy with multihoming, then relabeled. Connected by
// construction, small diameter, strong hubs.
Graph synthetic_internet_as(int n, int m, uint64_t seed);

}  // namespace srcrank
