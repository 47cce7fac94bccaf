#include "srcrank/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

namespace srcrank {

namespace {

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

}  // namespace

Graph synthetic_power_grid(int n, int m, uint64_t seed) {
  if (n < 2) throw Error("synthetic grid: need at least 2 nodes");
  long long max_edges = (long long)n * (n - 1) / 2;
  if (m < n - 1 || m > max_edges) throw Error("synthetic grid: bad edge count");

  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform01();
    y[i] = rng.uniform01();
  }

  // near-neighbor candidate edges from a cell grid
  int cells = std::max(1, int(std::floor(std::sqrt(double(n)))));
  double cw = 1.0 / cells;
  std::vector<std::vector<int>> cell(size_t(cells) * cells);
  auto cell_of = [&](double v) { return std::min(cells - 1, int(v / cw)); };
  for (int i = 0; i < n; ++i) cell[size_t(cell_of(x[i])) * cells + cell_of(y[i])].push_back(i);

  const int k_near = 12;
  std::set<std::pair<int, int>> cand_set;
  std::vector<std::pair<double, int>> near;
  for (int i = 0; i < n; ++i) {
    near.clear();
    int cx = cell_of(x[i]), cy = cell_of(y[i]);
    for (int r = 1; r <= cells; ++r) {
      for (int ax = std::max(0, cx - r); ax <= std::min(cells - 1, cx + r); ++ax)
        for (int ay = std::max(0, cy - r); ay <= std::min(cells - 1, cy + r); ++ay) {
          if (r > 1 && std::abs(ax - cx) < r && std::abs(ay - cy) < r) continue;
          for (int j : cell[size_t(ax) * cells + ay]) {
            if (j == i) continue;
            double dx = x[i] - x[j], dy = y[i] - y[j];
            near.push_back({dx * dx + dy * dy, j});
          }
        }
      if (int(near.size()) >= k_near || r >= cells) break;
    }
    std::sort(near.begin(), near.end());
    for (int t = 0; t < int(near.size()) && t < k_near; ++t) {
      int j = near[t].second;
      cand_set.insert({std::min(i, j), std::max(i, j)});
    }
  }

  std::vector<std::tuple<double, int, int>> cand;
  cand.reserve(cand_set.size());
  for (auto [u, v] : cand_set) {
    double dx = x[u] - x[v], dy = y[u] - y[v];
    cand.push_back({dx * dx + dy * dy, u, v});
  }
  std::sort(cand.begin(), cand.end());

  Dsu dsu(n);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::tuple<double, int, int>> rest;
  for (auto& [d, u, v] : cand) {
    if (dsu.unite(u, v))
      edges.push_back({u, v});
    else
      rest.push_back({d, u, v});
  }
  // candidate set can miss long bridges between sparse regions; patch with
  // the closest pair across the remaining components
  int comps = 0;
  for (int v = 0; v < n; ++v)
    if (dsu.find(v) == v) ++comps;
  while (comps > 1) {
    double bd = 1e300;
    int bu = -1, bv = -1;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (dsu.find(u) == dsu.find(v)) continue;
        double dx = x[u] - x[v], dy = y[u] - y[v];
        double d = dx * dx + dy * dy;
        if (d < bd) {
          bd = d;
          bu = u;
          bv = v;
        }
      }
    dsu.unite(bu, bv);
    edges.push_back({bu, bv});
    --comps;
  }

  for (auto& [d, u, v] : rest) {
    if (int(edges.size()) >= m) break;
    edges.push_back({u, v});
  }
  if (int(edges.size()) < m)
    throw Error("synthetic grid: candidate pool too small for requested edges");
  return make_graph(n, edges, false);
}

namespace {

// prefix sums over residual stub counts, for weighted node sampling
struct Fenwick {
  std::vector<long long> t;
  explicit Fenwick(int n) : t(size_t(n) + 1, 0) {}
  void add(int i, long long d) {
    for (++i; i < int(t.size()); i += i & -i) t[i] += d;
  }
  long long prefix(int i) const {  // sum over [0, i)
    long long s = 0;
    for (; i > 0; i -= i & -i) s += t[i];
    return s;
  }
  int find(long long u) const {  // smallest i with prefix(i + 1) > u
    int pos = 0;
    int step = 1;
    while (2 * step < int(t.size())) step *= 2;
    for (; step > 0; step /= 2) {
      int nxt = pos + step;
      if (nxt < int(t.size()) && t[nxt] <= u) {
        pos = nxt;
        u -= t[nxt];
      }
    }
    return pos;
  }
};

}  // namespace

Graph synthetic_internet_as(int n, int m, uint64_t seed) {
  if (n < 10) throw Error("synthetic AS graph: need at least 10 nodes");
  if (m < n - 1 || (long long)m > (long long)n * (n - 1) / 2)
    throw Error("synthetic AS graph: bad edge count");

  // tiered degree profile: one dominant transit hub, a few second-tier
  // transits, a thin band of mid ISPs, then stub networks and leaves
  int n_leaf = int(std::llround(0.349 * n));
  int hub = std::max(3, int(std::llround(0.2167 * n)));
  if (hub > n - 2) hub = n - 2;
  std::vector<int> second;
  if (n >= 200) {
    for (double f : {0.39, 0.30, 0.22}) {
      int d = std::min(n - 2, std::max(7, int(std::llround(f * hub))));
      second.push_back(d);
    }
  }
  int n_mid = std::max(1, int(std::llround(0.05 * n)));
  int n_small = n - n_leaf - 1 - int(second.size()) - n_mid;
  if (n_small < 1) throw Error("synthetic AS graph: too few nodes for the degree profile");

  // stub networks hold degree 2..6 on a fixed quantile curve
  std::vector<int> small_deg(n_small);
  long long small_sum = 0;
  for (int i = 0; i < n_small; ++i) {
    double u = (i + 0.5) / n_small;
    int d = std::min(6, std::max(2, int(std::llround(2.0 * std::pow(1.0 - u, -1.0 / 1.5)))));
    small_deg[i] = d;
    small_sum += d;
  }
  std::sort(small_deg.rbegin(), small_deg.rend());

  long long fixed = n_leaf + hub + std::accumulate(second.begin(), second.end(), 0LL);
  long long need = 2LL * m - fixed - small_sum;
  int dmid_max = std::max(9, hub / 8);
  if (need < 7LL * n_mid)
    throw Error("synthetic AS graph: edge count too small for the degree profile");
  if (need > (long long)n_mid * dmid_max)
    throw Error("synthetic AS graph: edge count too large for the degree profile");

  // mid-ISP degrees 7..dmid_max by quantile assignment; exponent bisected so
  // the whole sequence sums to the requested arc total
  auto mid_sum = [&](double gamma, std::vector<int>* out) {
    long long s = 0;
    if (out) out->clear();
    for (int i = 0; i < n_mid; ++i) {
      double u = (i + 0.5) / n_mid;
      int d = int(std::llround(7.0 * std::pow(1.0 - u, -1.0 / (gamma - 1.0))));
      d = std::min(std::max(d, 7), dmid_max);
      s += d;
      if (out) out->push_back(d);
    }
    return s;
  };
  double lo = 1.2, hi = 8.0;
  for (int it = 0; it < 80; ++it) {
    double mid = (lo + hi) / 2;
    if (mid_sum(mid, nullptr) > need)
      lo = mid;  // heavier tail than needed, raise exponent
    else
      hi = mid;
  }
  std::vector<int> mid_deg;
  mid_sum((lo + hi) / 2, &mid_deg);
  std::sort(mid_deg.rbegin(), mid_deg.rend());
  long long diff = need - std::accumulate(mid_deg.begin(), mid_deg.end(), 0LL);
  for (size_t i = 0; diff != 0; i = (i + 1) % mid_deg.size()) {
    if (diff > 0 && mid_deg[i] < dmid_max) {
      ++mid_deg[i];
      --diff;
    } else if (diff < 0 && mid_deg[i] > 7) {
      --mid_deg[i];
      ++diff;
    }
  }

  std::vector<int> deg;
  deg.reserve(n);
  deg.push_back(hub);
  deg.insert(deg.end(), second.begin(), second.end());
  deg.insert(deg.end(), mid_deg.begin(), mid_deg.end());
  deg.insert(deg.end(), small_deg.begin(), small_deg.end());
  deg.insert(deg.end(), size_t(n_leaf), 1);

  // hierarchy wiring: nodes are ordered by degree descending, and every node
  // below the top attaches its first stub to a higher-tier provider drawn
  // with probability proportional to remaining stubs, the way stub networks
  // buy transit; the provider edges alone form a spanning tree
  Rng rng(seed);
  Fenwick fw(n);
  for (int v = 0; v < n; ++v) fw.add(v, deg[v]);
  std::vector<std::unordered_set<int>> adj(n);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  auto connect = [&](int u, int v) {
    adj[u].insert(v);
    adj[v].insert(u);
    edges.push_back({std::min(u, v), std::max(u, v)});
    fw.add(u, -1);
    fw.add(v, -1);
  };
  // the largest regional ISPs buy transit from the second tier; smaller mids
  // connect straight to the top transit hub about half the time, and
  // otherwise to any higher tier, preferentially toward open customer slots
  int mid_begin = 1 + int(second.size());
  int mid_end = mid_begin + n_mid;
  for (int i = 1; i < mid_end; ++i) {
    if (i >= mid_begin && !second.empty() && deg[i] >= 20) {
      long long base = fw.prefix(1);
      long long pool = fw.prefix(mid_begin) - base;
      if (pool > 0) {
        connect(fw.find(base + (long long)rng.uniform_int(int(pool))), i);
        continue;
      }
    }
    if (i >= mid_begin && rng.uniform01() < 0.45 && fw.prefix(1) > 0) {
      connect(0, i);
      continue;
    }
    long long pool = fw.prefix(i);
    if (pool <= 0) throw Error("synthetic AS graph: provider stubs exhausted");
    int provider = fw.find((long long)rng.uniform_int(int(pool)));
    connect(provider, i);
  }

  // stub tiers buy transit from the big providers, preferentially toward
  // whoever has open customer slots; stubs do not resell to each other
  for (int i = mid_end; i < n; ++i) {
    long long pool = fw.prefix(mid_end);
    if (pool <= 0) pool = fw.prefix(i);
    if (pool <= 0) throw Error("synthetic AS graph: provider stubs exhausted");
    int provider = fw.find((long long)rng.uniform_int(int(pool)));
    connect(provider, i);
  }

  // stub networks spend spare stubs multihoming to extra big-tier providers,
  // meshing the customer cones together
  for (int v = mid_end; v < n; ++v) {
    while (int(edges.size()) < m) {
      long long rv = fw.prefix(v + 1) - fw.prefix(v);
      if (rv <= 0) break;
      long long pool = fw.prefix(mid_end);
      if (pool <= 0) break;
      int p = fw.find((long long)rng.uniform_int(int(pool)));
      int tries = 0;
      while (adj[v].count(p) && ++tries < 64)
        p = fw.find((long long)rng.uniform_int(int(pool)));
      if (adj[v].count(p)) break;
      connect(p, v);
    }
  }

  // close any remaining gap by pairing leftover open slots, falling back to
  // uniform non-adjacent pairs, so the edge count lands exactly
  while (int(edges.size()) < m) {
    long long pool = fw.prefix(n);
    int a = -1, b = -1;
    if (pool >= 2) {
      a = fw.find((long long)rng.uniform_int(int(pool)));
      for (int tries = 0; tries < 64; ++tries) {
        int c = fw.find((long long)rng.uniform_int(int(pool)));
        if (c != a && !adj[a].count(c)) {
          b = c;
          break;
        }
      }
    }
    if (b >= 0) {
      fw.add(a, -1);
      fw.add(b, -1);
    } else {
      if (a >= 0) fw.add(a, -1);
      if (a < 0) a = rng.uniform_int(n);
      do {
        b = rng.uniform_int(n);
      } while (a == b || adj[a].count(b));
    }
    adj[a].insert(b);
    adj[b].insert(a);
    edges.push_back({std::min(a, b), std::max(a, b)});
  }

  // relabel so node ids carry no tier information, as in harvested data
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
  for (auto& [u, v] : edges) {
    int pu = perm[u], pv = perm[v];
    u = std::min(pu, pv);
    v = std::max(pu, pv);
  }
  return make_graph(n, edges, false);
}

}  // namespace srcrank
