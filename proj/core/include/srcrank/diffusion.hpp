#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "srcrank/graph.hpp"
#include "srcrank/rng.hpp"

namespace srcrank {

// Full outcome of one simulated contagion.
struct ContagionResult {
  int source = -1;
  std::vector<int> infected;               // ascending node ids, source included
  std::unordered_map<int, double> times;   // infection time of every infected node
};

// What a ranking algorithm is allowed to see: the infected set and observed
// timestamps for a subset of it.
struct Observation {
  std::vector<int> infected;       // ascending node ids
  std::map<int, double> tau;       // observed node -> timestamp
};

// Susceptible-infected contagion in continuous time: each arc from an
// infected node to an uninfected one carries an independent Gaussian(mu,
// sigma^2) delay truncated to strictly positive values; a node is infected at
// the earliest arrival. The source is infected at time 0. Halts once
// stop_count nodes are infected; raises RetryableError when fewer nodes are
// reachable (the message reports the reachable count).
ContagionResult simulate_trunc_gaussian(const Graph& g, int source, double mu,
                                        double sigma, int stop_count, Rng& rng);

// Independent-cascade contagion in time slots: arc success probabilities are
// drawn uniformly on (0,1) once per arc at simulation start; at slot t every
// node infected at t-1 attempts each out-arc once. Infection times are slot
// indices. Halts at stop_count, truncating the final slot by a uniform random
// subset; raises RetryableError when the cascade dies out first.
ContagionResult simulate_ic(const Graph& g, int source, int stop_count, Rng& rng);

// As simulate_ic but with caller-chosen arc probabilities (keyed by
// u * node_count + v); missing keys default to 0.
ContagionResult simulate_ic_with_probs(
    const Graph& g, int source, int stop_count,
    const std::unordered_map<long long, double>& arc_prob, Rng& rng);

// Degree-binned source selection: bins 1..M-1 hold exact degrees, bin M holds
// degree >= M; empty bins are excluded; picks a bin uniformly, then a node
// uniformly inside it. M=1 degenerates to a uniform pick over non-isolated
// nodes.
int sample_source_degree_binned(const Graph& g, int bins, Rng& rng);

// Reveals round(fraction * |infected|) timestamps (half up, capped at the
// pool size), chosen uniformly without replacement among non-source infected
// nodes. The source is never revealed unless include_source is set (protocol
// ablation).
Observation sample_observed_unbiased(const ContagionResult& r, double fraction, Rng& rng,
                                     bool include_source = false);

// As above but biased toward late infections: nodes are drawn iteratively
// without replacement with probability proportional to t_i - t_source.
Observation sample_observed_time_biased(const ContagionResult& r, double fraction, Rng& rng,
                                        bool include_source = false);

// Checks ContagionResult invariants against g: the source is the unique
// earliest node, every other infected node has an in-neighbor infected
// strictly earlier, and the infected set is connected. Throws on violation.
void validate_contagion(const Graph& g, const ContagionResult& r);

}  // namespace srcrank
