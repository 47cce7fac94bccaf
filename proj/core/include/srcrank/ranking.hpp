#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "srcrank/diffusion.hpp"
#include "srcrank/eif.hpp"
#include "srcrank/graph.hpp"

namespace srcrank {

enum class Algo { CR, TR, RUM, ECCE, NETSLEUTH, GAU };

// CLI tags: cr, tr, rum, ecce, netsleuth, gau.
std::string algo_tag(Algo a);
std::optional<Algo> algo_from_tag(const std::string& tag);
const std::vector<Algo>& all_algos();

// A full ordering of the infected nodes, most-suspect first, in original
// graph ids. All ties anywhere break by ascending node id.
struct Ranking {
  Algo algo = Algo::CR;
  std::vector<int> ordered;
  std::unordered_map<int, double> score;
  // 1-based position of node; errors when node is not ranked.
  int rank_of(int node) const;
};

// Shared product of one greedy-construction sweep over all candidates,
// reusable by both cost-based and tree-based rankings.
struct EifSweep {
  std::vector<int> candidates;          // original ids, ascending
  std::vector<double> cost;             // aligned with candidates
  int best = -1;                        // candidate with least cost, -1 if none finite
  SpreadingTree best_tree;              // tree of `best` (local ids)
  std::vector<int> to_original;
  double mu = 0.0;
};
EifSweep eif_sweep(const Graph& g, const Observation& obs,
                   std::optional<double> mu = {}, int jobs = 1);

// Cost-based ranking: candidates ascending by construction cost, then
// infinite-cost candidates by id, then non-candidate observed nodes by
// ascending timestamp.
Ranking rank_cr(const Graph& g, const Observation& obs,
                std::optional<double> mu = {}, int jobs = 1);

// Tree-based ranking: all infected nodes ascending by their assigned time on
// the minimum-cost candidate's tree; falls back to the cost-based order when
// no candidate is feasible.
Ranking rank_tr(const Graph& g, const Observation& obs,
                std::optional<double> mu = {}, int jobs = 1);

// Rumor centrality, ranked ascending (log R = log |I|! - sum of log subtree
// sizes over the BFS tree rooted at the candidate).
Ranking rank_rumor_centrality(const Graph& g, const Observation& obs);

// Infection eccentricity over the infected subgraph, ranked descending.
Ranking rank_eccentricity(const Graph& g, const Observation& obs);

// Eigenvector of the largest eigenvalue of the infected principal submatrix
// of the graph Laplacian (dense cyclic Jacobi); absolute values, descending.
Ranking rank_netsleuth(const Graph& g, const Observation& obs);

// As rank_cr but attachment paths are read off the plain BFS tree of the
// infected subgraph rooted at the candidate (no modified-path search, no
// exclusion of later-observed interiors).
Ranking rank_gau(const Graph& g, const Observation& obs,
                 std::optional<double> mu = {}, int jobs = 1);

Ranking rank(Algo a, const Graph& g, const Observation& obs,
             std::optional<double> mu = {}, int jobs = 1);

// Rankings for a cascade observed in the wild: validates that the infected
// set is connected in g (error lists the components otherwise) and that mu
// is available (given, or estimable from >= 2 observed times). Computes CR
// and TR off one shared sweep.
std::vector<Ranking> rank_real_cascade(const Graph& g, const Observation& obs,
                                       const std::vector<Algo>& algos,
                                       std::optional<double> mu = {}, int jobs = 1);

}  // namespace srcrank
