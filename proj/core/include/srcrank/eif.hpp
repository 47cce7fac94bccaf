#pragma once

#include <map>
#include <optional>
#include <vector>

#include "srcrank/diffusion.hpp"
#include "srcrank/graph.hpp"
#include "srcrank/spreading_tree.hpp"

namespace srcrank {

// Mean-delay estimate from observed timestamps: sum of |tau_v - tau_w| over
// unordered observed pairs divided by the sum of their shortest-path hop
// counts inside the infected subgraph. Unreachable pairs are skipped and
// counted in *skipped. Errors with fewer than two observed times; the result
// is floored at 1e-9.
double estimate_mu(const Graph& g, const Observation& obs, int* skipped = nullptr);

// Source candidates: every unobserved infected node plus the
// earliest-observed node(s). Ascending ids.
std::vector<int> candidate_set(const Observation& obs);

// One attachment decision of the greedy construction.
struct AttachStep {
  int alpha = -1;        // node attached this iteration (local id)
  int attach_from = -1;  // chosen tree node m* (local id), -1 when none
  int path_len = 0;
  double gamma = 0.0;    // added cost, +inf when unattachable
};

struct EifOutcome {
  SpreadingTree tree;           // local ids of the infected subgraph
  double cost = 0.0;            // +inf when some observed node is unattachable
  std::vector<AttachStep> log;  // one entry per observed-node iteration
};

namespace detail {

// Modified shortest paths toward alpha: BFS from alpha over reversed arcs of
// the infected subgraph in which interior nodes may be neither tree nodes
// nor yet-unattached observed nodes. dist[v] is the hop count of the best
// valid v -> alpha path (-1 unreachable); next_hop[v] advances one step
// toward alpha along it.
struct ModifiedPaths {
  std::vector<int> dist;
  std::vector<int> next_hop;
};
ModifiedPaths modified_bfs(const Graph& gi, const std::vector<char>& in_tree,
                           const std::vector<char>& pending_observed, int alpha);

// Greedy spreading-tree construction over the infected subgraph gi (local
// ids) with observed times tau, rooted at root. Observed nodes are attached
// in ascending-time order via minimum-cost modified shortest paths; interior
// times interpolate evenly along the path; remaining nodes follow by BFS at
// parent time + mu. An unobserved root is bootstrapped from the first
// attachment at t_root = tau_alpha1 - len * mu with zero cost.
EifOutcome build_tree_local(const Graph& gi, const std::map<int, double>& tau,
                            int root, double mu);

double estimate_mu_local(const Graph& gi, const std::map<int, double>& tau,
                         int* skipped);

}  // namespace detail

// build_tree over original graph ids: induces the infected subgraph of obs,
// runs the construction, and reports the tree in local ids alongside the
// mapping. mu defaults to estimate_mu(g, obs).
struct EifResult {
  EifOutcome outcome;
  std::vector<int> to_original;  // local id -> original id
  double mu = 0.0;
};
EifResult eif_build_tree(const Graph& g, const Observation& obs, int root,
                         std::optional<double> mu = {});

}  // namespace srcrank
