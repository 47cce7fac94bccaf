#include "srcrank/eif.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace srcrank {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMuFloor = 1e-9;
}  // namespace

namespace detail {

double estimate_mu_local(const Graph& gi, const std::map<int, double>& tau, int* skipped) {
  if (tau.size() < 2)
    throw Error("estimate_mu: need at least two observed timestamps, have " +
                std::to_string(tau.size()));
  std::vector<std::pair<int, double>> obs(tau.begin(), tau.end());
  // one BFS per observed node covers every unordered pair
  std::vector<std::vector<int>> dist;
  dist.reserve(obs.size());
  for (const auto& [v, t] : obs) dist.push_back(bfs_distances(gi, v));
  double num = 0, den = 0;
  int skip = 0;
  for (size_t i = 0; i < obs.size(); ++i) {
    for (size_t j = i + 1; j < obs.size(); ++j) {
      // hop count along the spreading direction (earlier to later observed);
      // fall back to the reverse direction on directed graphs
      size_t from = obs[i].second <= obs[j].second ? i : j;
      size_t to = i + j - from;
      int l = dist[from][obs[to].first];
      if (l < 0) l = dist[to][obs[from].first];
      if (l <= 0) {
        ++skip;
        continue;
      }
      num += std::abs(obs[i].second - obs[j].second);
      den += double(l);
    }
  }
  if (skipped) *skipped = skip;
  if (den == 0)
    throw Error("estimate_mu: no connected observed pair in the infected subgraph");
  return std::max(num / den, kMuFloor);
}

ModifiedPaths modified_bfs(const Graph& gi, const std::vector<char>& in_tree,
                           const std::vector<char>& pending_observed, int alpha) {
  int n = gi.node_count();
  ModifiedPaths mp;
  mp.dist.assign(n, -1);
  mp.next_hop.assign(n, -1);
  mp.dist[alpha] = 0;
  std::deque<int> q{alpha};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    // tree nodes terminate a branch (they are valid endpoints m); pending
    // observed nodes may not appear inside a path at all
    if (x != alpha && (in_tree[x] || pending_observed[x])) continue;
    for (int y : gi.in[x]) {  // reversed arcs: grow paths y -> x -> .. -> alpha
      if (mp.dist[y] >= 0) continue;
      if (pending_observed[y]) continue;
      mp.dist[y] = mp.dist[x] + 1;
      mp.next_hop[y] = x;
      q.push_back(y);
    }
  }
  return mp;
}

EifOutcome build_tree_local(const Graph& gi, const std::map<int, double>& tau,
                            int root, double mu) {
  int n = gi.node_count();
  if (root < 0 || root >= n) throw Error("eif: root out of range");
  EifOutcome out;
  out.tree.root = root;
  out.tree.parent.assign(n, -1);
  out.tree.time.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.cost = 0.0;

  // alpha: observed nodes ascending by (time, id)
  std::vector<std::pair<double, int>> alpha(tau.size());
  std::transform(tau.begin(), tau.end(), alpha.begin(),
                 [](const auto& kv) { return std::make_pair(kv.second, kv.first); });
  std::sort(alpha.begin(), alpha.end());

  std::vector<char> in_tree(n, 0), pending(n, 0);
  in_tree[root] = 1;
  if (auto it = tau.find(root); it != tau.end()) out.tree.time[root] = it->second;
  for (const auto& [t, v] : alpha) pending[v] = (v != root);

  for (size_t k = 0; k < alpha.size(); ++k) {
    auto [t_alpha, a] = alpha[k];
    pending[a] = 0;
    if (in_tree[a]) continue;  // the root itself when it is observed

    AttachStep step;
    step.alpha = a;
    step.gamma = kInf;
    auto mp = modified_bfs(gi, in_tree, pending, a);
    bool bootstrap = std::isnan(out.tree.time[root]);
    if (bootstrap) {
      // first attachment to a rootless tree: the root is the only tree node
      // and its time is chosen to make the path gap exactly mu, at zero cost
      if (mp.dist[root] > 0) {
        step.attach_from = root;
        step.path_len = mp.dist[root];
        step.gamma = 0.0;
        out.tree.time[root] = t_alpha - double(step.path_len) * mu;
      }
    } else {
      for (int m = 0; m < n; ++m) {
        if (!in_tree[m] || mp.dist[m] < 0) continue;
        double gamma = path_cost(mp.dist[m], out.tree.time[m], t_alpha, mu);
        if (gamma < step.gamma) {  // strict: ties keep the smaller id
          step.gamma = gamma;
          step.attach_from = m;
          step.path_len = mp.dist[m];
        }
      }
    }
    out.log.push_back(step);
    if (!std::isfinite(step.gamma)) {
      out.cost = kInf;
      return out;  // observed node unattachable; candidate infeasible
    }
    // attach the path m* -> .. -> a, interpolating interior times evenly
    double t_m = out.tree.time[step.attach_from];
    double span = t_alpha - t_m;
    int hop = 0;
    for (int x = step.attach_from; x != a;) {
      int next = mp.next_hop[x];
      ++hop;
      out.tree.parent[next] = x;
      out.tree.time[next] = t_m + double(hop) * span / double(step.path_len);
      in_tree[next] = 1;
      x = next;
    }
    out.tree.time[a] = t_alpha;  // exact, no float accumulation
    out.cost += step.gamma;
  }

  // completion: remaining nodes follow breadth-first at parent time + mu
  std::deque<int> q;
  for (int v = 0; v < n; ++v)
    if (in_tree[v]) q.push_back(v);
  if (!q.empty() && std::isnan(out.tree.time[root])) {
    // no observed time at all: anchor the root at zero
    out.tree.time[root] = 0.0;
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : gi.out[u]) {
      if (in_tree[v]) continue;
      in_tree[v] = 1;
      out.tree.parent[v] = u;
      out.tree.time[v] = out.tree.time[u] + mu;
      q.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!in_tree[v]) {
      // unreachable from the tree along arc direction: no spreading tree
      // rooted here can cover the infected set
      out.cost = kInf;
      return out;
    }
  }
  return out;
}

}  // namespace detail

double estimate_mu(const Graph& g, const Observation& obs, int* skipped) {
  auto sub = induced_subgraph(g, obs.infected);
  std::map<int, double> tau;
  for (const auto& [v, t] : obs.tau) {
    if (sub.to_local[v] < 0) throw Error("estimate_mu: observed node not infected");
    tau.emplace(sub.to_local[v], t);
  }
  return detail::estimate_mu_local(sub.g, tau, skipped);
}

std::vector<int> candidate_set(const Observation& obs) {
  std::vector<int> c;
  double min_tau = std::numeric_limits<double>::infinity();
  for (const auto& [v, t] : obs.tau) min_tau = std::min(min_tau, t);
  for (int v : obs.infected) {
    auto it = obs.tau.find(v);
    if (it == obs.tau.end() || it->second == min_tau) c.push_back(v);
  }
  return c;  // obs.infected is ascending, so c is too
}

EifResult eif_build_tree(const Graph& g, const Observation& obs, int root,
                         std::optional<double> mu) {
  auto sub = induced_subgraph(g, obs.infected);
  if (sub.to_local[root] < 0) throw Error("eif_build_tree: root not infected");
  if (auto it = obs.tau.find(root); it != obs.tau.end()) {
    double min_tau = std::numeric_limits<double>::infinity();
    for (const auto& [v, t] : obs.tau) min_tau = std::min(min_tau, t);
    if (it->second != min_tau)
      throw Error("eif_build_tree: root " + g.label(root) +
                  " is observed later than the earliest timestamp, not a candidate");
  }
  std::map<int, double> tau;
  for (const auto& [v, t] : obs.tau) {
    if (sub.to_local[v] < 0) throw Error("eif_build_tree: observed node not infected");
    tau.emplace(sub.to_local[v], t);
  }
  EifResult r;
  r.mu = mu ? *mu : detail::estimate_mu_local(sub.g, tau, nullptr);
  r.outcome = detail::build_tree_local(sub.g, tau, sub.to_local[root], r.mu);
  r.to_original = sub.to_original;
  return r;
}

}  // namespace srcrank
