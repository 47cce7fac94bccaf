#include "srcrank/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace srcrank {

namespace {

void check_source(const Graph& g, int source) {
  if (source < 0 || source >= g.node_count())
    throw Error("simulate: source out of range");
}

ContagionResult finish(int source, std::unordered_map<int, double> times) {
  ContagionResult r;
  r.source = source;
  r.times = std::move(times);
  r.infected.reserve(r.times.size());
  for (const auto& [v, t] : r.times) r.infected.push_back(v);
  std::sort(r.infected.begin(), r.infected.end());
  return r;
}

}  // namespace

ContagionResult simulate_trunc_gaussian(const Graph& g, int source, double mu,
                                        double sigma, int stop_count, Rng& rng) {
  check_source(g, source);
  if (stop_count < 1) throw Error("simulate: stop_count must be >= 1");
  if (mu <= 0 || sigma < 0) throw Error("simulate: need mu > 0 and sigma >= 0");
  // Min-heap of (arrival time, target, origin); the tuple order pins the
  // outcome when arrivals tie exactly (possible at sigma = 0).
  using Event = std::tuple<double, int, int>;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pq;
  std::unordered_map<int, double> times;
  auto infect = [&](int v, double t) {
    times.emplace(v, t);
    for (int w : g.out[v]) {
      if (times.count(w)) continue;
      double delay = sigma == 0 ? mu : rng.positive_normal(mu, sigma);
      pq.emplace(t + delay, w, v);
    }
  };
  infect(source, 0.0);
  while (int(times.size()) < stop_count && !pq.empty()) {
    auto [t, v, u] = pq.top();
    pq.pop();
    if (times.count(v)) continue;  // stale arrival
    infect(v, t);
  }
  if (int(times.size()) < stop_count)
    throw RetryableError("simulate_trunc_gaussian: only " + std::to_string(times.size()) +
                         " nodes reachable from source " + g.labels[source] +
                         ", need " + std::to_string(stop_count));
  return finish(source, std::move(times));
}

ContagionResult simulate_ic_with_probs(
    const Graph& g, int source, int stop_count,
    const std::unordered_map<long long, double>& arc_prob, Rng& rng) {
  check_source(g, source);
  if (stop_count < 1) throw Error("simulate: stop_count must be >= 1");
  long long n = g.node_count();
  auto prob = [&](int u, int v) {
    auto it = arc_prob.find(u * n + v);
    return it == arc_prob.end() ? 0.0 : it->second;
  };
  std::unordered_map<int, double> times;
  times.emplace(source, 0.0);
  std::vector<int> frontier{source};
  int slot = 0;
  while (int(times.size()) < stop_count) {
    ++slot;
    std::vector<int> fresh;
    for (int u : frontier) {
      for (int v : g.out[u]) {
        if (times.count(v)) continue;
        if (rng.uniform01() < prob(u, v) &&
            std::find(fresh.begin(), fresh.end(), v) == fresh.end())
          fresh.push_back(v);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    if (fresh.empty())
      throw RetryableError("simulate_ic: cascade died at size " +
                           std::to_string(times.size()) + " before reaching " +
                           std::to_string(stop_count));
    int room = stop_count - int(times.size());
    if (int(fresh.size()) > room) {
      // uniform subset keeps the final slot unbiased
      for (int i = 0; i < room; ++i) {
        int j = i + rng.uniform_int(int(fresh.size()) - i);
        std::swap(fresh[i], fresh[j]);
      }
      fresh.resize(room);
      std::sort(fresh.begin(), fresh.end());
    }
    for (int v : fresh) times.emplace(v, double(slot));
    frontier = std::move(fresh);
  }
  return finish(source, std::move(times));
}

ContagionResult simulate_ic(const Graph& g, int source, int stop_count, Rng& rng) {
  long long n = g.node_count();
  std::unordered_map<long long, double> arc_prob;
  arc_prob.reserve(size_t(g.arc_count()));
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.out[u]) arc_prob[u * n + v] = rng.uniform01();
  return simulate_ic_with_probs(g, source, stop_count, arc_prob, rng);
}

int sample_source_degree_binned(const Graph& g, int bins, Rng& rng) {
  if (bins < 1) throw Error("sample_source_degree_binned: bins must be >= 1");
  std::vector<std::vector<int>> bucket(bins + 1);
  for (int v = 0; v < g.node_count(); ++v) {
    int d = g.degree(v);
    if (d < 1) continue;  // isolated nodes cannot seed a cascade
    bucket[std::min(d, bins)].push_back(v);
  }
  std::vector<int> nonempty;
  for (int b = 1; b <= bins; ++b)
    if (!bucket[b].empty()) nonempty.push_back(b);
  if (nonempty.empty())
    throw Error("sample_source_degree_binned: graph has no non-isolated node");
  const auto& chosen = bucket[nonempty[rng.uniform_int(int(nonempty.size()))]];
  return chosen[rng.uniform_int(int(chosen.size()))];
}

namespace {

std::vector<int> revelation_pool(const ContagionResult& r, bool include_source) {
  std::vector<int> pool;
  pool.reserve(r.infected.size());
  for (int v : r.infected)
    if (include_source || v != r.source) pool.push_back(v);
  return pool;
}

int revelation_count(const ContagionResult& r, double fraction, size_t pool_size) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error("sample_observed: fraction must be in (0, 1]");
  int count = int(std::floor(fraction * double(r.infected.size()) + 0.5));
  return std::min(count, int(pool_size));
}

Observation observed_from(const ContagionResult& r, const std::vector<int>& chosen) {
  Observation obs;
  obs.infected = r.infected;
  for (int v : chosen) obs.tau.emplace(v, r.times.at(v));
  return obs;
}

}  // namespace

Observation sample_observed_unbiased(const ContagionResult& r, double fraction, Rng& rng,
                                     bool include_source) {
  auto pool = revelation_pool(r, include_source);
  int count = revelation_count(r, fraction, pool.size());
  for (int i = 0; i < count; ++i) {
    int j = i + rng.uniform_int(int(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return observed_from(r, pool);
}

Observation sample_observed_time_biased(const ContagionResult& r, double fraction, Rng& rng,
                                        bool include_source) {
  auto pool = revelation_pool(r, include_source);
  int count = revelation_count(r, fraction, pool.size());
  double t_source = r.times.at(r.source);
  std::vector<double> weight(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) weight[i] = r.times.at(pool[i]) - t_source;
  std::vector<int> chosen;
  for (int pick = 0; pick < count; ++pick) {
    double total = 0;
    for (double w : weight) total += w;
    if (total <= 0)
      throw Error("sample_observed_time_biased: no node with positive time offset left");
    double x = rng.uniform01() * total;
    int idx = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (weight[i] <= 0) continue;
      idx = int(i);
      if (x < weight[i]) break;
      x -= weight[i];
    }
    // idx falls back to the last positive-weight slot on float underflow
    chosen.push_back(pool[idx]);
    weight[idx] = 0;
  }
  return observed_from(r, chosen);
}

void validate_contagion(const Graph& g, const ContagionResult& r) {
  if (r.infected.empty() || !r.times.count(r.source))
    throw Error("contagion invariant: source missing from result");
  if (r.times.size() != r.infected.size())
    throw Error("contagion invariant: times and infected set differ in size");
  double t0 = r.times.at(r.source);
  for (int v : r.infected) {
    if (!r.times.count(v)) throw Error("contagion invariant: missing time");
    double tv = r.times.at(v);
    if (v != r.source && tv <= t0)
      throw Error("contagion invariant: source is not the unique earliest node");
    if (v == r.source) continue;
    bool has_earlier_in_neighbor = false;
    for (int u : g.in[v]) {
      auto it = r.times.find(u);
      if (it != r.times.end() && it->second < tv) {
        has_earlier_in_neighbor = true;
        break;
      }
    }
    if (!has_earlier_in_neighbor)
      throw Error("contagion invariant: node " + g.labels[v] +
                  " has no earlier-infected in-neighbor");
  }
  // earlier-in-neighbor chains imply the infected set is connected through
  // the source, so no separate connectivity check is needed
}

}  // namespace srcrank
