#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "srcrank/diffusion.hpp"
#include "srcrank/graph.hpp"

namespace srcrank {

// Enumerates every spanning tree of a small connected undirected graph
// exactly once (edge deletion/contraction with connectivity pruning; output
// order is deterministic). Each tree is an edge list; the callback may
// return false to stop early. Returns the number of trees emitted. Errors
// on graphs over max_nodes nodes and once more than cap trees are emitted.
long long enumerate_spanning_trees(
    const Graph& g,
    const std::function<bool(const std::vector<std::pair<int, int>>&)>& emit,
    long long cap = 10'000'000, int max_nodes = 25);

// Exact minimum of the quadratic spreading cost over node times for one
// rooted tree: minimizes sum over tree edges of (t_child - t_parent - mu)^2
// subject to t_v = tau_v on observed nodes and t_child - t_parent >=
// eps_feas. Solved to global optimality (tree-structured elimination plus an
// active-set loop on the order constraints; `iterations` counts equality
// solves). Infeasible pinnings yield cost = +inf and empty times. Errors
// when tau is empty or edges do not form a spanning tree of n nodes.
struct QpSolution {
  std::vector<double> time;
  double cost = 0.0;
  int iterations = 0;
};
QpSolution min_cost_timestamps_qp(int n, const std::vector<std::pair<int, int>>& tree_edges,
                                  int root, const std::map<int, double>& tau, double mu,
                                  double eps_feas = 1e-9);

// Exact per-candidate cost: minimum over all spanning trees of the infected
// subgraph rooted at v of the per-tree optimum. v must be a candidate.
double exact_node_cost(const Graph& g, const Observation& obs, int v, double mu);

// Exact costs for every candidate from a single enumeration pass.
std::map<int, double> exact_costs(const Graph& g, const Observation& obs, double mu);

// Ratio of the greedy construction's best candidate cost to the exact best
// candidate cost. Both zero -> 1; exact zero below a positive greedy cost ->
// +inf with degenerate set (such runs are excluded from averages and counted
// separately by callers).
struct RatioResult {
  double ratio = 1.0;
  double exact_cost = 0.0;
  double eif_cost = 0.0;
  bool degenerate = false;
  std::string note;
};
RatioResult approximation_ratio(const Graph& g, const Observation& obs, double mu);

}  // namespace srcrank
