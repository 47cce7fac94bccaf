#include "srcrank/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace srcrank {

namespace {

void sort_adjacency(Graph& g) {
  for (auto& a : g.out) std::sort(a.begin(), a.end());
  for (auto& a : g.in) std::sort(a.begin(), a.end());
}

}  // namespace

long long Graph::arc_count() const {
  long long m = 0;
  for (const auto& a : out) m += (long long)a.size();
  return m;
}

bool Graph::has_arc(int u, int v) const {
  const auto& a = out[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::node_id(const std::string& label) const {
  auto it = label_ids.find(label);
  return it == label_ids.end() ? -1 : it->second;
}

std::vector<std::pair<int, int>> Graph::undirected_edges() const {
  if (directed) throw Error("undirected_edges: graph is directed");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < node_count(); ++u)
    for (int v : out[u])
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges, bool directed) {
  Graph g;
  g.directed = directed;
  g.out.assign(n, {});
  g.in.assign(n, {});
  g.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    g.labels[i] = std::to_string(i);
    g.label_ids[g.labels[i]] = i;
  }
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw Error("make_graph: edge endpoint out of range");
    if (u == v) throw Error("make_graph: self-loop " + std::to_string(u));
    auto key = (!directed && u > v) ? std::make_pair(v, u) : std::make_pair(u, v);
    if (!seen.insert(key).second) continue;
    g.out[u].push_back(v);
    g.in[v].push_back(u);
    if (!directed) {
      g.out[v].push_back(u);
      g.in[u].push_back(v);
    }
  }
  sort_adjacency(g);
  return g;
}

Graph load_edge_list(const std::string& path, bool directed, LoadStats* stats) {
  std::ifstream f(path);
  if (!f) throw Error("load_edge_list: cannot open " + path);
  Graph g;
  g.directed = directed;
  LoadStats local;
  std::set<std::pair<int, int>> seen;
  auto intern = [&](const std::string& tok) {
    auto it = g.label_ids.find(tok);
    if (it != g.label_ids.end()) return it->second;
    int id = g.node_count();
    g.label_ids.emplace(tok, id);
    g.labels.push_back(tok);
    g.out.emplace_back();
    g.in.emplace_back();
    return id;
  };
  std::string line;
  long long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;  // blank or comment-only line
    if (!(ss >> b) || (ss >> extra))
      throw Error("load_edge_list: malformed line " + std::to_string(lineno) +
                  " in " + path + ": expected 'u v'");
    int u = intern(a), v = intern(b);
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    auto key = (!directed && u > v) ? std::make_pair(v, u) : std::make_pair(u, v);
    if (!seen.insert(key).second) {
      ++local.duplicate_edges;
      continue;
    }
    g.out[u].push_back(v);
    g.in[v].push_back(u);
    if (!directed) {
      g.out[v].push_back(u);
      g.in[u].push_back(v);
    }
  }
  sort_adjacency(g);
  if (stats) *stats = local;
  return g;
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("write_edge_list: cannot open " + path);
  if (g.directed) {
    for (int u = 0; u < g.node_count(); ++u)
      for (int v : g.out[u]) f << g.labels[u] << ' ' << g.labels[v] << '\n';
  } else {
    for (auto [u, v] : g.undirected_edges())
      f << g.labels[u] << ' ' << g.labels[v] << '\n';
  }
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.out[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

std::optional<int> shortest_path_len(const Graph& g, int u, int v) {
  if (u == v) return 0;
  std::vector<int> dist(g.node_count(), -1);
  std::deque<int> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : g.out[x]) {
      if (dist[y] >= 0) continue;
      dist[y] = dist[x] + 1;
      if (y == v) return dist[y];
      q.push_back(y);
    }
  }
  return std::nullopt;
}

bool is_connected(const Graph& g) {
  int n = g.node_count();
  if (n == 0) return true;
  std::vector<char> vis(n, 0);
  std::deque<int> q{0};
  vis[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    auto visit = [&](int v) {
      if (!vis[v]) {
        vis[v] = 1;
        ++count;
        q.push_back(v);
      }
    };
    for (int v : g.out[u]) visit(v);
    for (int v : g.in[u]) visit(v);
  }
  return count == n;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  InducedSubgraph s;
  s.to_original = nodes;
  std::sort(s.to_original.begin(), s.to_original.end());
  s.to_original.erase(std::unique(s.to_original.begin(), s.to_original.end()),
                      s.to_original.end());
  s.to_local.assign(g.node_count(), -1);
  for (int i = 0; i < int(s.to_original.size()); ++i) {
    int orig = s.to_original[i];
    if (orig < 0 || orig >= g.node_count())
      throw Error("induced_subgraph: node out of range");
    s.to_local[orig] = i;
  }
  int k = int(s.to_original.size());
  s.g.directed = g.directed;
  s.g.out.assign(k, {});
  s.g.in.assign(k, {});
  s.g.labels.resize(k);
  for (int i = 0; i < k; ++i) {
    int orig = s.to_original[i];
    s.g.labels[i] = g.labels[orig];
    s.g.label_ids[s.g.labels[i]] = i;
    for (int v : g.out[orig])
      if (s.to_local[v] >= 0) s.g.out[i].push_back(s.to_local[v]);
    for (int v : g.in[orig])
      if (s.to_local[v] >= 0) s.g.in[i].push_back(s.to_local[v]);
  }
  // adjacency stays sorted: local order preserves original id order
  return s;
}

namespace {

// Iterative Tarjan bridge finding over an undirected adjacency with edge ids.
std::vector<char> find_bridges(int n, const std::vector<std::pair<int, int>>& edges,
                               const std::vector<std::vector<std::pair<int, int>>>& adj) {
  std::vector<char> bridge(edges.size(), 0);
  std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
  int timer = 0;
  struct Frame {
    int v;
    size_t idx;
  };
  for (int r = 0; r < n; ++r) {
    if (disc[r] >= 0) continue;
    std::vector<Frame> stack{{r, 0}};
    disc[r] = low[r] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.idx < adj[f.v].size()) {
        auto [w, eid] = adj[f.v][f.idx++];
        if (eid == parent_edge[f.v]) continue;
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          parent_edge[w] = eid;
          stack.push_back({w, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridge[parent_edge[v]] = 1;
        }
      }
    }
  }
  return bridge;
}

}  // namespace

Graph remove_random_edges_connected(const Graph& g, int k, Rng& rng) {
  if (g.directed) throw Error("remove_random_edges_connected: graph is directed");
  if (!is_connected(g)) throw Error("remove_random_edges_connected: graph is disconnected");
  if (k < 0) throw Error("remove_random_edges_connected: negative removal count");
  int n = g.node_count();
  auto edges = g.undirected_edges();
  std::vector<char> alive(edges.size(), 1);
  long long alive_count = (long long)edges.size();
  for (int step = 0; step < k; ++step) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < int(edges.size()); ++e)
      if (alive[e]) {
        adj[edges[e].first].emplace_back(edges[e].second, e);
        adj[edges[e].second].emplace_back(edges[e].first, e);
      }
    auto bridge = find_bridges(n, edges, adj);
    std::vector<int> removable;
    for (int e = 0; e < int(edges.size()); ++e)
      if (alive[e] && !bridge[e]) removable.push_back(e);
    if (removable.empty())
      throw Error("remove_random_edges_connected: cannot remove " + std::to_string(k) +
                  " edges; only " + std::to_string(step) +
                  " removable without disconnecting (" + std::to_string(alive_count) +
                  " edges left, all bridges)");
    int e = removable[rng.uniform_int(int(removable.size()))];
    alive[e] = 0;
    --alive_count;
  }
  std::vector<std::pair<int, int>> kept;
  for (int e = 0; e < int(edges.size()); ++e)
    if (alive[e]) kept.push_back(edges[e]);
  Graph out = make_graph(n, kept, false);
  out.labels = g.labels;
  out.label_ids = g.label_ids;
  return out;
}

Graph apply_infector_constraint(const Graph& g, int infector, int infectee) {
  if (infector == infectee) throw Error("apply_infector_constraint: infector equals infectee");
  if (!g.has_arc(infector, infectee))
    throw Error("apply_infector_constraint: no arc " + g.labels[infector] + " -> " +
                g.labels[infectee]);
  Graph out;
  out.directed = true;
  int n = g.node_count();
  out.out.assign(n, {});
  out.in.assign(n, {});
  out.labels = g.labels;
  out.label_ids = g.label_ids;
  for (int u = 0; u < n; ++u) {
    for (int v : g.out[u]) {
      if (v == infectee && u != infector) continue;  // other in-arcs of infectee
      if (u == infectee && v == infector) continue;  // reverse arc
      out.out[u].push_back(v);
      out.in[v].push_back(u);
    }
  }
  // adjacency inherited sorted
  return out;
}

}  // namespace srcrank
