#include "srcrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "srcrank/parallel.hpp"

namespace srcrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_observation(const Graph& g, const Observation& obs) {
  if (obs.infected.empty()) throw Error("ranking: empty infected set");
  if (!std::is_sorted(obs.infected.begin(), obs.infected.end()))
    throw Error("ranking: infected set must be ascending");
  for (int v : obs.infected)
    if (v < 0 || v >= g.node_count()) throw Error("ranking: infected node out of range");
  for (const auto& [v, t] : obs.tau)
    if (!std::binary_search(obs.infected.begin(), obs.infected.end(), v))
      throw Error("ranking: observed node " + g.labels[v] + " is not marked infected");
}

struct LocalObs {
  InducedSubgraph sub;
  std::map<int, double> tau;  // local ids
};

LocalObs localize(const Graph& g, const Observation& obs) {
  LocalObs lo;
  lo.sub = induced_subgraph(g, obs.infected);
  for (const auto& [v, t] : obs.tau) lo.tau.emplace(lo.sub.to_local[v], t);
  return lo;
}

double resolve_mu(const Graph& gi, const std::map<int, double>& tau,
                  std::optional<double> mu) {
  if (mu) {
    if (!(*mu > 0)) throw Error("ranking: mu must be positive");
    return *mu;
  }
  return detail::estimate_mu_local(gi, tau, nullptr);
}

// Ordering shared by the cost-based rankings: finite-cost candidates
// ascending, then infinite-cost candidates by id, then non-candidate
// observed nodes by ascending timestamp.
Ranking cost_tier_ranking(Algo algo, const Graph& g, const Observation& obs,
                          const std::vector<int>& candidates,
                          const std::vector<double>& cost) {
  Ranking r;
  r.algo = algo;
  std::vector<std::pair<double, int>> finite;
  std::vector<int> infinite;
  for (size_t i = 0; i < candidates.size(); ++i) {
    r.score[candidates[i]] = cost[i];
    if (std::isfinite(cost[i]))
      finite.emplace_back(cost[i], candidates[i]);
    else
      infinite.push_back(candidates[i]);
  }
  std::sort(finite.begin(), finite.end());
  std::vector<std::pair<double, int>> tail;  // non-candidates by timestamp
  for (int v : obs.infected) {
    if (std::binary_search(candidates.begin(), candidates.end(), v)) continue;
    tail.emplace_back(obs.tau.at(v), v);
    r.score[v] = kInf;
  }
  std::sort(tail.begin(), tail.end());
  for (const auto& [c, v] : finite) r.ordered.push_back(v);
  for (int v : infinite) r.ordered.push_back(v);
  for (const auto& [t, v] : tail) r.ordered.push_back(v);
  return r;
}

Ranking from_scores(Algo algo, const std::vector<int>& nodes,
                    const std::vector<double>& score, bool ascending) {
  Ranking r;
  r.algo = algo;
  std::vector<int> idx(nodes.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (score[a] != score[b]) return ascending ? score[a] < score[b] : score[a] > score[b];
    return nodes[a] < nodes[b];
  });
  for (int i : idx) {
    r.ordered.push_back(nodes[i]);
    r.score[nodes[i]] = score[i];
  }
  return r;
}

}  // namespace

std::string algo_tag(Algo a) {
  switch (a) {
    case Algo::CR: return "cr";
    case Algo::TR: return "tr";
    case Algo::RUM: return "rum";
    case Algo::ECCE: return "ecce";
    case Algo::NETSLEUTH: return "netsleuth";
    case Algo::GAU: return "gau";
  }
  throw Error("algo_tag: bad algorithm");
}

std::optional<Algo> algo_from_tag(const std::string& tag) {
  for (Algo a : all_algos())
    if (algo_tag(a) == tag) return a;
  return std::nullopt;
}

const std::vector<Algo>& all_algos() {
  static const std::vector<Algo> v{Algo::CR, Algo::TR,        Algo::RUM,
                                   Algo::ECCE, Algo::NETSLEUTH, Algo::GAU};
  return v;
}

int Ranking::rank_of(int node) const {
  for (size_t i = 0; i < ordered.size(); ++i)
    if (ordered[i] == node) return int(i) + 1;
  throw Error("rank_of: node not ranked");
}

EifSweep eif_sweep(const Graph& g, const Observation& obs, std::optional<double> mu,
                   int jobs) {
  validate_observation(g, obs);
  auto lo = localize(g, obs);
  EifSweep sweep;
  sweep.mu = resolve_mu(lo.sub.g, lo.tau, mu);
  sweep.to_original = lo.sub.to_original;
  sweep.candidates = candidate_set(obs);
  sweep.cost.assign(sweep.candidates.size(), kInf);
  std::vector<EifOutcome> outcomes(sweep.candidates.size());
  parallel_for(int(sweep.candidates.size()), jobs, [&](int i) {
    int root = lo.sub.to_local[sweep.candidates[i]];
    outcomes[i] = detail::build_tree_local(lo.sub.g, lo.tau, root, sweep.mu);
    sweep.cost[i] = outcomes[i].cost;
  });
  for (size_t i = 0; i < sweep.candidates.size(); ++i) {
    if (!std::isfinite(sweep.cost[i])) continue;
    if (sweep.best < 0 || sweep.cost[i] < sweep.cost[sweep.best]) sweep.best = int(i);
  }
  if (sweep.best >= 0) sweep.best_tree = std::move(outcomes[sweep.best].tree);
  return sweep;
}

Ranking rank_cr(const Graph& g, const Observation& obs, std::optional<double> mu, int jobs) {
  auto sweep = eif_sweep(g, obs, mu, jobs);
  return cost_tier_ranking(Algo::CR, g, obs, sweep.candidates, sweep.cost);
}

Ranking rank_tr(const Graph& g, const Observation& obs, std::optional<double> mu, int jobs) {
  auto sweep = eif_sweep(g, obs, mu, jobs);
  if (sweep.best < 0) {
    // no feasible candidate tree: fall back to the cost-based order
    Ranking r = cost_tier_ranking(Algo::CR, g, obs, sweep.candidates, sweep.cost);
    r.algo = Algo::TR;
    return r;
  }
  std::vector<double> time(sweep.to_original.size());
  for (size_t i = 0; i < time.size(); ++i) time[i] = sweep.best_tree.time[int(i)];
  Ranking r = from_scores(Algo::TR, sweep.to_original, time, /*ascending=*/true);
  return r;
}

namespace {

// BFS tree over the infected subgraph: parents, depths, discovery order.
struct BfsTree {
  std::vector<int> parent, depth, order;
  bool covers_all = false;
};

BfsTree bfs_tree(const Graph& gi, int root) {
  BfsTree t;
  int n = gi.node_count();
  t.parent.assign(n, -1);
  t.depth.assign(n, -1);
  t.order.reserve(n);
  std::deque<int> q{root};
  t.depth[root] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    t.order.push_back(u);
    for (int v : gi.out[u]) {
      if (t.depth[v] >= 0) continue;
      t.depth[v] = t.depth[u] + 1;
      t.parent[v] = u;
      q.push_back(v);
    }
  }
  t.covers_all = int(t.order.size()) == n;
  return t;
}

// GAU construction for one candidate: the spreading tree is the plain BFS
// tree; observed nodes attach in time order along their BFS path from the
// already-built part, interiors interpolated evenly. An observed node swept
// up as an earlier path's interior is re-pinned to its timestamp when its
// turn comes (no added cost); that looseness is inherent to reading paths
// off a fixed tree.
double gau_candidate_cost(const Graph& gi, const std::map<int, double>& tau, int root,
                          double mu) {
  auto bt = bfs_tree(gi, root);
  if (!bt.covers_all) return kInf;
  int n = gi.node_count();
  std::vector<std::pair<double, int>> alpha(tau.size());
  std::transform(tau.begin(), tau.end(), alpha.begin(),
                 [](const auto& kv) { return std::make_pair(kv.second, kv.first); });
  std::sort(alpha.begin(), alpha.end());
  std::vector<char> in_tree(n, 0);
  std::vector<double> time(n, std::numeric_limits<double>::quiet_NaN());
  in_tree[root] = 1;
  if (auto it = tau.find(root); it != tau.end()) time[root] = it->second;
  double cost = 0;
  for (auto [t_a, a] : alpha) {
    if (in_tree[a]) {
      time[a] = t_a;
      continue;
    }
    std::vector<int> path;  // a up to (not including) the attachment node m
    int m = a;
    while (!in_tree[m]) {
      path.push_back(m);
      m = bt.parent[m];
    }
    int len = int(path.size());
    if (std::isnan(time[m])) {
      time[m] = t_a - double(len) * mu;  // rootless bootstrap, zero cost
    } else {
      double gamma = path_cost(len, time[m], t_a, mu);
      if (!std::isfinite(gamma)) return kInf;
      cost += gamma;
    }
    double span = t_a - time[m];
    for (int i = len - 1; i >= 0; --i) {
      int hop = len - i;
      time[path[i]] = time[m] + double(hop) * span / double(len);
      in_tree[path[i]] = 1;
    }
    time[a] = t_a;
  }
  if (std::isnan(time[root])) time[root] = 0.0;  // no observed times at all
  for (int u : bt.order) {
    if (u == root || in_tree[u]) continue;
    in_tree[u] = 1;
    time[u] = time[bt.parent[u]] + mu;  // BFS order stamps parents first
  }
  return cost;
}

}  // namespace

Ranking rank_gau(const Graph& g, const Observation& obs, std::optional<double> mu, int jobs) {
  validate_observation(g, obs);
  auto lo = localize(g, obs);
  double mu_hat = resolve_mu(lo.sub.g, lo.tau, mu);
  auto candidates = candidate_set(obs);
  std::vector<double> cost(candidates.size(), kInf);
  parallel_for(int(candidates.size()), jobs, [&](int i) {
    cost[i] = gau_candidate_cost(lo.sub.g, lo.tau, lo.sub.to_local[candidates[i]], mu_hat);
  });
  return cost_tier_ranking(Algo::GAU, g, obs, candidates, cost);
}

Ranking rank_rumor_centrality(const Graph& g, const Observation& obs) {
  validate_observation(g, obs);
  auto lo = localize(g, obs);
  const Graph& gi = lo.sub.g;
  int n = gi.node_count();
  double log_fact = std::lgamma(double(n) + 1.0);
  std::vector<double> score(n, kInf);
  for (int v = 0; v < n; ++v) {
    auto bt = bfs_tree(gi, v);
    if (!bt.covers_all) continue;  // centrality undefined; ranks last
    std::vector<double> subtree(n, 1.0);
    for (int i = n - 1; i > 0; --i) {
      int u = bt.order[i];
      subtree[bt.parent[u]] += subtree[u];
    }
    double s = log_fact;
    for (int u = 0; u < n; ++u) s -= std::log(subtree[u]);
    score[v] = s;
  }
  // ascendent order of rumor centrality
  return from_scores(Algo::RUM, lo.sub.to_original, score, /*ascending=*/true);
}

Ranking rank_eccentricity(const Graph& g, const Observation& obs) {
  validate_observation(g, obs);
  auto lo = localize(g, obs);
  const Graph& gi = lo.sub.g;
  int n = gi.node_count();
  std::vector<double> ecc(n, 0.0);
  for (int v = 0; v < n; ++v) {
    auto dist = bfs_distances(gi, v);
    for (int u = 0; u < n; ++u) {
      if (dist[u] < 0) {
        ecc[v] = -kInf;  // unreachable: degenerate candidate, ranks last
        break;
      }
      ecc[v] = std::max(ecc[v], double(dist[u]));
    }
  }
  // descendent order of infection eccentricity
  return from_scores(Algo::ECCE, lo.sub.to_original, ecc, /*ascending=*/false);
}

namespace {

// Cyclic Jacobi eigendecomposition of a dense symmetric matrix; returns the
// eigenvector of the largest eigenvalue. Deterministic and immune to small
// spectral gaps, unlike power iteration.
std::vector<double> top_eigenvector_jacobi(std::vector<double>& a, int n) {
  std::vector<double> v(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[size_t(i) * n + i] = 1.0;
  auto at = [&](int i, int j) -> double& { return a[size_t(i) * n + j]; };
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    double diag = 0;
    for (int p = 0; p < n; ++p) diag += at(p, p) * at(p, p);
    if (off <= 1e-26 * std::max(1.0, diag)) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[size_t(k) * n + p], vkq = v[size_t(k) * n + q];
          v[size_t(k) * n + p] = c * vkp - s * vkq;
          v[size_t(k) * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (at(i, i) > at(best, best)) best = i;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = v[size_t(i) * n + best];
  return x;
}

}  // namespace

Ranking rank_netsleuth(const Graph& g, const Observation& obs) {
  validate_observation(g, obs);
  auto lo = localize(g, obs);
  const Graph& gi = lo.sub.g;
  int n = gi.node_count();
  if (size_t(n) * n > size_t(16) << 20)
    throw Error("rank_netsleuth: infected set too large for dense eigensolve");
  // infected principal submatrix of the full-graph Laplacian: diagonal keeps
  // the full degree, off-diagonal is -1 per infected edge
  std::vector<double> a(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[size_t(i) * n + i] = double(g.degree(lo.sub.to_original[i]));
    for (int j : gi.out[i]) a[size_t(i) * n + j] = -1.0;
  }
  std::vector<double> x = top_eigenvector_jacobi(a, n);
  std::vector<double> score(n);
  for (int i = 0; i < n; ++i) score[i] = std::abs(x[i]);
  return from_scores(Algo::NETSLEUTH, lo.sub.to_original, score, /*ascending=*/false);
}

Ranking rank(Algo a, const Graph& g, const Observation& obs, std::optional<double> mu,
             int jobs) {
  switch (a) {
    case Algo::CR: return rank_cr(g, obs, mu, jobs);
    case Algo::TR: return rank_tr(g, obs, mu, jobs);
    case Algo::RUM: return rank_rumor_centrality(g, obs);
    case Algo::ECCE: return rank_eccentricity(g, obs);
    case Algo::NETSLEUTH: return rank_netsleuth(g, obs);
    case Algo::GAU: return rank_gau(g, obs, mu, jobs);
  }
  throw Error("rank: bad algorithm");
}

std::vector<Ranking> rank_real_cascade(const Graph& g, const Observation& obs,
                                       const std::vector<Algo>& algos,
                                       std::optional<double> mu, int jobs) {
  validate_observation(g, obs);
  // the infected set must form one connected piece of g (arc direction
  // ignored); report the components otherwise
  auto lo = localize(g, obs);
  {
    int n = lo.sub.g.node_count();
    std::vector<int> comp(n, -1);
    int pieces = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::deque<int> q{s};
      comp[s] = pieces;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        auto visit = [&](int v) {
          if (comp[v] < 0) {
            comp[v] = pieces;
            q.push_back(v);
          }
        };
        for (int v : lo.sub.g.out[u]) visit(v);
        for (int v : lo.sub.g.in[u]) visit(v);
      }
      ++pieces;
    }
    if (pieces > 1) {
      std::string msg = "rank_real_cascade: infected set splits into " +
                        std::to_string(pieces) + " components:";
      for (int p = 0; p < pieces; ++p) {
        msg += " {";
        int listed = 0;
        for (int v = 0; v < n; ++v) {
          if (comp[v] != p) continue;
          if (listed++) msg += ",";
          if (listed > 5) {
            msg += "..";
            break;
          }
          msg += g.labels[lo.sub.to_original[v]];
        }
        msg += "}";
      }
      throw Error(msg);
    }
  }
  bool needs_mu = false;
  for (Algo a : algos)
    if (a == Algo::CR || a == Algo::TR || a == Algo::GAU) needs_mu = true;
  if (needs_mu && !mu && obs.tau.size() < 2)
    throw Error("rank_real_cascade: fewer than two observed timestamps; pass mu explicitly");

  std::vector<Ranking> out;
  bool want_cr = std::count(algos.begin(), algos.end(), Algo::CR);
  bool want_tr = std::count(algos.begin(), algos.end(), Algo::TR);
  std::optional<EifSweep> sweep;
  if (want_cr && want_tr) sweep = eif_sweep(g, obs, mu, jobs);
  for (Algo a : algos) {
    if (sweep && a == Algo::CR) {
      out.push_back(cost_tier_ranking(Algo::CR, g, obs, sweep->candidates, sweep->cost));
    } else if (sweep && a == Algo::TR) {
      if (sweep->best < 0) {
        Ranking r = cost_tier_ranking(Algo::CR, g, obs, sweep->candidates, sweep->cost);
        r.algo = Algo::TR;
        out.push_back(std::move(r));
      } else {
        std::vector<double> time(sweep->to_original.size());
        for (size_t i = 0; i < time.size(); ++i) time[i] = sweep->best_tree.time[int(i)];
        out.push_back(from_scores(Algo::TR, sweep->to_original, time, true));
      }
    } else {
      out.push_back(rank(a, g, obs, mu, jobs));
    }
  }
  return out;
}

}  // namespace srcrank
