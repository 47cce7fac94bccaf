#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "srcrank/common.hpp"
#include "srcrank/rng.hpp"

namespace srcrank {

// Static graph over dense node ids with the original labels retained.
// Undirected graphs store both arcs of every edge; adjacency lists are kept
// sorted ascending so traversals visit neighbors in id order.
struct Graph {
  bool directed = false;
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> label_ids;

  int node_count() const { return int(out.size()); }
  long long arc_count() const;
  // Undirected edge count; equals arc_count for directed graphs.
  long long edge_count() const { return directed ? arc_count() : arc_count() / 2; }
  bool has_arc(int u, int v) const;
  int degree(int v) const { return int(out[v].size()); }
  const std::string& label(int v) const { return labels[v]; }
  // Node id for a label, or -1.
  int node_id(const std::string& label) const;
  // Undirected edges as (u, v) with u < v; error on directed graphs.
  std::vector<std::pair<int, int>> undirected_edges() const;
};

struct LoadStats {
  long long duplicate_edges = 0;
  long long self_loops = 0;
};

// Builds a graph from dense-id edges; node i gets label std::to_string(i).
// Self-loops are rejected; duplicate edges are dropped.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges, bool directed);

// Reads "u v" lines; '#' starts a comment; labels are arbitrary tokens
// interned in first-appearance order. Malformed lines raise an Error naming
// the line number. Self-loops and duplicates are dropped and counted.
Graph load_edge_list(const std::string& path, bool directed, LoadStats* stats = nullptr);

void write_edge_list(const Graph& g, const std::string& path);

// Hop count of a shortest u -> v path, or nullopt when unreachable.
std::optional<int> shortest_path_len(const Graph& g, int u, int v);

// BFS hop counts from src over out-arcs; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int src);

// Connectivity ignoring arc direction.
bool is_connected(const Graph& g);

struct InducedSubgraph {
  Graph g;                       // local ids 0..k-1, ascending original id
  std::vector<int> to_original;  // local id -> original id
  std::vector<int> to_local;     // original id -> local id, -1 outside
};

// Subgraph induced by `nodes` (original ids, need not be sorted).
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

// Removes k edges from a connected undirected graph, keeping it connected:
// each removal picks uniformly among the edges whose removal does not
// disconnect the graph (equivalent to uniform draws with rejection) and
// errors once only bridges remain.
Graph remove_random_edges_connected(const Graph& g, int k, Rng& rng);

// Side information that `infector` infected `infectee`: drops every other
// in-arc of infectee and the reverse arc infectee -> infector. The result is
// directed (an undirected input is first expanded to its arc view).
// Idempotent; errors when arc infector -> infectee is absent.
Graph apply_infector_constraint(const Graph& g, int infector, int infectee);

}  // namespace srcrank
