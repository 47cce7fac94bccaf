#include "srcrank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "srcrank/eif.hpp"
#include "srcrank/ranking.hpp"

namespace srcrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) {
      p[x] = p[p[x]];
      x = p[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

bool spans_one_component(Dsu dsu, const std::vector<std::pair<int, int>>& edges, int n) {
  int comps = 0;
  for (int v = 0; v < n; ++v)
    if (dsu.find(v) == v) ++comps;
  for (auto [u, v] : edges)
    if (dsu.unite(u, v)) --comps;
  return comps == 1;
}

}  // namespace

long long enumerate_spanning_trees(
    const Graph& g,
    const std::function<bool(const std::vector<std::pair<int, int>>&)>& emit,
    long long cap, int max_nodes) {
  if (g.directed) throw Error("spanning tree enumeration: undirected graphs only");
  int n = g.node_count();
  if (n == 0) throw Error("spanning tree enumeration: empty graph");
  if (n > max_nodes)
    throw Error("spanning tree enumeration: graph has " + std::to_string(n) +
                " nodes, limit is " + std::to_string(max_nodes));
  if (!is_connected(g)) throw Error("spanning tree enumeration: graph not connected");

  auto edges = g.undirected_edges();
  long long count = 0;
  bool stop = false;
  std::vector<std::pair<int, int>> chosen;
  chosen.reserve(size_t(std::max(0, n - 1)));

  // deletion/contraction on the first edge still crossing two components;
  // the exclusion branch runs only when the rest still spans, so every
  // recursion path ends in at least one emitted tree
  std::function<void(Dsu, std::vector<std::pair<int, int>>)> rec =
      [&](Dsu dsu, std::vector<std::pair<int, int>> rest) {
        if (stop) return;
        if (int(chosen.size()) == n - 1) {
          if (++count > cap)
            throw Error("spanning tree enumeration: more than " + std::to_string(cap) +
                        " spanning trees");
          if (!emit(chosen)) stop = true;
          return;
        }
        size_t i = 0;
        while (i < rest.size() && dsu.find(rest[i].first) == dsu.find(rest[i].second)) ++i;
        auto e = rest[i];
        std::vector<std::pair<int, int>> tail(rest.begin() + long(i) + 1, rest.end());
        Dsu merged = dsu;
        merged.unite(e.first, e.second);
        chosen.push_back(e);
        rec(std::move(merged), tail);
        chosen.pop_back();
        if (!stop && spans_one_component(dsu, tail, n)) rec(std::move(dsu), std::move(tail));
      };
  rec(Dsu(n), std::move(edges));
  return count;
}

namespace {

struct RootedTree {
  std::vector<int> parent;  // -1 at root
  std::vector<int> depth;
  std::vector<int> order;  // BFS order, root first
};

RootedTree root_tree(int n, const std::vector<std::pair<int, int>>& tree_edges, int root) {
  if (root < 0 || root >= n) throw Error("tree timestamps: root out of range");
  if (int(tree_edges.size()) != n - 1)
    throw Error("tree timestamps: edges do not form a spanning tree");
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : tree_edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw Error("tree timestamps: bad edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  RootedTree t;
  t.parent.assign(n, -2);
  t.depth.assign(n, 0);
  t.order.reserve(n);
  t.parent[root] = -1;
  t.order.push_back(root);
  for (size_t head = 0; head < t.order.size(); ++head) {
    int u = t.order[head];
    for (int w : adj[u])
      if (t.parent[w] == -2) {
        t.parent[w] = u;
        t.depth[w] = t.depth[u] + 1;
        t.order.push_back(w);
      }
  }
  if (int(t.order.size()) != n)
    throw Error("tree timestamps: edges do not form a spanning tree");
  return t;
}

QpSolution infeasible_solution(int iterations) {
  QpSolution s;
  s.cost = kInf;
  s.iterations = iterations;
  return s;
}

}  // namespace

QpSolution min_cost_timestamps_qp(int n, const std::vector<std::pair<int, int>>& tree_edges,
                                  int root, const std::map<int, double>& tau, double mu,
                                  double eps_feas) {
  if (n < 1) throw Error("tree timestamps: empty tree");
  if (tau.empty()) throw Error("tree timestamps: no pinned times");
  for (auto& [v, t] : tau) {
    if (v < 0 || v >= n) throw Error("tree timestamps: pinned node out of range");
    if (!std::isfinite(t)) throw Error("tree timestamps: pinned time not finite");
  }
  RootedTree tr = root_tree(n, tree_edges, root);
  std::vector<char> pinned(n, 0);
  std::vector<double> pin(n, 0.0);
  for (auto& [v, t] : tau) {
    pinned[v] = 1;
    pin[v] = t;
  }

  if (n == 1) {
    QpSolution s;
    s.time = {pin[0]};
    return s;
  }

  // interval precheck: low = tightest bound from pinned ancestors, up = from
  // pinned descendants; an empty interval anywhere means no feasible times
  std::vector<double> low(n, -kInf), up(n, kInf);
  for (int u : tr.order) {
    double fromp = tr.parent[u] >= 0 ? low[tr.parent[u]] + eps_feas : -kInf;
    low[u] = pinned[u] ? std::max(pin[u], fromp) : fromp;
  }
  for (size_t k = tr.order.size(); k-- > 0;) {
    int u = tr.order[k];
    double own = pinned[u] ? pin[u] : kInf;
    up[u] = std::min(up[u], own);
    if (tr.parent[u] >= 0) up[tr.parent[u]] = std::min(up[tr.parent[u]], up[u] - eps_feas);
  }
  for (int u = 0; u < n; ++u) {
    if (pinned[u] && (pin[u] < low[u] - 1e-12 || pin[u] > up[u] + 1e-12))
      return infeasible_solution(0);
    if (low[u] > up[u] + 1e-12) return infeasible_solution(0);
  }

  // active lower bounds t_c - t_p >= eps are contracted into offset blocks;
  // each pass solves the equality problem exactly by eliminating leaf blocks
  // of the contracted tree, then clamps newly violated gaps. Gaps only shrink
  // as others clamp, so constraints never need releasing.
  std::vector<char> active(n, 0);  // indexed by child node, root unused
  std::vector<double> t(n, 0.0);
  int iterations = 0;
  for (int pass = 0; pass <= n; ++pass) {
    if (pass == n) throw Error("tree timestamps: active set failed to converge");
    ++iterations;

    std::vector<int> block(n, -1);
    std::vector<double> offset(n, 0.0);
    int nb = 0;
    for (int u : tr.order) {
      if (tr.parent[u] < 0 || !active[u]) {
        block[u] = nb++;
        offset[u] = 0.0;
      } else {
        block[u] = block[tr.parent[u]];
        offset[u] = offset[tr.parent[u]] + eps_feas;
      }
    }
    std::vector<double> bpin(nb, 0.0);
    std::vector<char> bpinned(nb, 0);
    bool consistent = true;
    for (int u = 0; u < n && consistent; ++u) {
      if (!pinned[u]) continue;
      int b = block[u];
      double implied = pin[u] - offset[u];
      if (!bpinned[b]) {
        bpinned[b] = 1;
        bpin[b] = implied;
      } else if (std::abs(bpin[b] - implied) > 1e-10) {
        consistent = false;
      }
    }
    if (!consistent) return infeasible_solution(iterations);

    // contracted edges; (to, m, sign): the term is (T_to - T_u - sign*m)^2
    // read from u's side with `to` in the child role
    std::vector<std::vector<std::tuple<int, double, int>>> badj(nb);
    for (int c = 0; c < n; ++c) {
      if (tr.parent[c] < 0 || active[c]) continue;
      int p = tr.parent[c];
      double m = mu + offset[p] - offset[c];
      badj[block[p]].push_back({block[c], m, +1});
      badj[block[c]].push_back({block[p], m, -1});
    }

    std::vector<double> bt(nb, 0.0);
    for (int b = 0; b < nb; ++b)
      if (bpinned[b]) bt[b] = bpin[b];

    std::vector<int> comp_parent(nb, -2);
    std::vector<double> qa(nb, 0.0), qb(nb, 0.0);
    std::vector<int> comp;
    for (int seed = 0; seed < nb; ++seed) {
      if (bpinned[seed] || comp_parent[seed] != -2) continue;
      comp.clear();
      comp.push_back(seed);
      comp_parent[seed] = -1;
      for (size_t head = 0; head < comp.size(); ++head) {
        int u = comp[head];
        for (auto& [w, m, s] : badj[u])
          if (!bpinned[w] && comp_parent[w] == -2) {
            comp_parent[w] = u;
            comp.push_back(w);
          }
      }
      for (size_t k = comp.size(); k-- > 0;) {
        int u = comp[k];
        qa[u] = 0.0;
        qb[u] = 0.0;
        for (auto& [w, m, s] : badj[u]) {
          double mt = s * m;  // child-role target seen from u
          if (bpinned[w]) {
            qa[u] += 1.0;
            qb[u] += -2.0 * (bpin[w] - mt);
          } else if (comp_parent[w] == u) {
            qa[u] += qa[w] / (qa[w] + 1.0);
            qb[u] += (2.0 * qa[w] * mt + qb[w]) / (qa[w] + 1.0);
          }
        }
      }
      if (!(qa[seed] > 0.0))
        throw Error("tree timestamps: unanchored component in equality solve");
      bt[seed] = -qb[seed] / (2.0 * qa[seed]);
      for (size_t k = 1; k < comp.size(); ++k) {
        int w = comp[k];
        int u = comp_parent[w];
        double mt = 0.0;
        for (auto& [x, m, s] : badj[u])
          if (x == w) {
            mt = s * m;
            break;
          }
        bt[w] = (bt[u] + mt - qb[w] / 2.0) / (qa[w] + 1.0);
      }
    }

    for (int u = 0; u < n; ++u) t[u] = bt[block[u]] + offset[u];

    int added = 0;
    for (int c = 0; c < n; ++c) {
      if (tr.parent[c] < 0 || active[c]) continue;
      if (t[c] - t[tr.parent[c]] < eps_feas - 1e-12) {
        active[c] = 1;
        ++added;
      }
    }
    if (added == 0) break;
  }

  QpSolution s;
  s.time = std::move(t);
  s.iterations = iterations;
  s.cost = 0.0;
  for (int c = 0; c < n; ++c) {
    if (tr.parent[c] < 0) continue;
    double d = s.time[c] - s.time[tr.parent[c]] - mu;
    s.cost += d * d;
  }
  return s;
}

std::map<int, double> exact_costs(const Graph& g, const Observation& obs, double mu) {
  if (g.directed) throw Error("exact oracle: undirected graphs only");
  if (obs.infected.empty()) throw Error("exact oracle: empty infected set");
  if (obs.tau.empty()) throw Error("exact oracle: no observed timestamps");
  if (!(mu > 0)) throw Error("exact oracle: mu must be positive");

  auto cands = candidate_set(obs);
  auto sub = induced_subgraph(g, obs.infected);
  int n = sub.g.node_count();
  std::map<int, double> tau_local;
  for (auto& [v, tv] : obs.tau) tau_local[sub.to_local[v]] = tv;
  std::vector<int> local_cands;
  local_cands.reserve(cands.size());
  for (int v : cands) local_cands.push_back(sub.to_local[v]);

  std::vector<double> best(local_cands.size(), kInf);
  enumerate_spanning_trees(sub.g, [&](const std::vector<std::pair<int, int>>& te) {
    for (size_t i = 0; i < local_cands.size(); ++i) {
      auto qp = min_cost_timestamps_qp(n, te, local_cands[i], tau_local, mu);
      if (qp.cost < best[i]) best[i] = qp.cost;
    }
    return true;
  });

  std::map<int, double> out;
  for (size_t i = 0; i < cands.size(); ++i) out[cands[i]] = best[i];
  return out;
}

double exact_node_cost(const Graph& g, const Observation& obs, int v, double mu) {
  auto costs = exact_costs(g, obs, mu);
  auto it = costs.find(v);
  if (it == costs.end()) throw Error("exact oracle: node is not a candidate");
  return it->second;
}

RatioResult approximation_ratio(const Graph& g, const Observation& obs, double mu) {
  RatioResult r;
  auto costs = exact_costs(g, obs, mu);
  double exact = kInf;
  for (auto& [v, c] : costs) exact = std::min(exact, c);
  auto sweep = eif_sweep(g, obs, mu, 1);
  double greedy = sweep.best >= 0 ? sweep.cost[size_t(sweep.best)] : kInf;
  r.exact_cost = exact;
  r.eif_cost = greedy;
  if (std::isinf(exact) || std::isinf(greedy)) {
    r.degenerate = true;
    r.ratio = (std::isinf(exact) && std::isinf(greedy)) ? 1.0 : kInf;
    r.note = "infinite cost on " + std::string(std::isinf(exact) ? "exact" : "greedy") +
             " side";
    return r;
  }
  if (exact == 0.0) {
    if (greedy == 0.0) {
      r.ratio = 1.0;
    } else {
      r.ratio = kInf;
      r.degenerate = true;
      r.note = "exact optimum is zero with positive greedy cost";
    }
    return r;
  }
  r.ratio = greedy / exact;
  return r;
}

}  // namespace srcrank
