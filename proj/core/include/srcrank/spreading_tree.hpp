#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "srcrank/common.hpp"

namespace srcrank {

// A rooted tree over the nodes of an infected subgraph (local ids 0..n-1)
// together with an infection time for every node.
struct SpreadingTree {
  int root = -1;
  std::vector<int> parent;   // parent[v], -1 at the root
  std::vector<double> time;  // assigned infection times
  int node_count() const { return int(parent.size()); }
};

// Quadratic cost: sum over tree edges (v -> w) of (t_w - t_v - mu)^2.
double tree_cost(const SpreadingTree& t, double mu);

// True when t is a tree spanning all its nodes, every child is strictly
// later than its parent, and t matches tau exactly on observed nodes.
// `why` (optional) receives the first violation found.
bool is_feasible_consistent(const SpreadingTree& t, const std::map<int, double>& tau,
                            std::string* why = nullptr);

// Minimum-cost times for a path with pinned endpoints: n nodes, first at
// tau_first, last at tau_last, interior evenly spaced (the unique optimum of
// the quadratic cost for any mu). Errors unless n >= 2 and
// tau_first < tau_last.
std::vector<double> assign_line_times(double tau_first, double tau_last, int n);

// Cost of attaching along a length-len path from a node at time t_m to an
// observed node at time t_alpha with evenly spread interior times:
// len * ((t_alpha - t_m) / len - mu)^2. Infinite when t_alpha <= t_m
// (attachment infeasible in that direction). Errors when len < 1.
double path_cost(int len, double t_m, double t_alpha, double mu);

// Debug serialization: one "node parent time" line per node (parent "-" at
// the root), using the provided labels. read_tree inverts write_tree.
void write_tree(const SpreadingTree& t, const std::vector<std::string>& labels,
                std::ostream& os);
SpreadingTree read_tree(const std::vector<std::string>& labels, std::istream& is);

}  // namespace srcrank
