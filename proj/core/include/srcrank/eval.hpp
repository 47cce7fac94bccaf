#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srcrank/diffusion.hpp"
#include "srcrank/graph.hpp"
#include "srcrank/ranking.hpp"

namespace srcrank {

enum class Model { Gaussian, IC };
enum class SampleDist { Unbiased, Biased };

struct ExperimentConfig {
  std::string graph_path;  // informational, folded into the config hash
  bool directed = false;
  Model model = Model::Gaussian;
  double mu = 100.0;
  double sigma = 100.0;
  int stop_count = 200;
  int bins = 20;
  double fraction = 0.5;
  SampleDist dist = SampleDist::Unbiased;
  std::vector<Algo> algorithms;
  int runs = 100;
  std::vector<double> gammas;  // percent values in (0, 100]
  uint64_t seed = 1;
  // When true the source's own timestamp may be revealed (protocol
  // ablation; default keeps it hidden).
  bool include_source_timestamp = false;
};

// FNV-1a over the canonical key=value rendering of cfg; hex string.
std::string config_hash(const ExperimentConfig& cfg);

struct RunRecord {
  int run = 0;
  Algo algo = Algo::CR;
  int source = -1;       // original id
  int rank = 0;          // 1-based rank of the source
  int infected_count = 0;
};

struct AccuracyReport {
  std::vector<RunRecord> records;          // grouped by run, algorithm order
  std::vector<Algo> algorithms;
  std::vector<double> gammas;
  int runs = 0;
  std::string hash;
  // Fraction of runs whose source ranked within the top ceil(gamma% * |I|).
  double accuracy(Algo a, double gamma) const;
};

// gamma%-accuracy over (source rank, infected count) pairs: the fraction
// with rank <= ceil(gamma/100 * infected_count). gamma in (0, 100].
double gamma_accuracy(const std::vector<std::pair<int, int>>& rank_and_size, double gamma);

// Builds the observation a ranker sees for one simulated cascade: applies
// the configured revelation distribution and, for slotted (IC) times, adds
// per-node jitter of magnitude 1e-9 so ties become strict orderings.
Observation make_run_observation(const ContagionResult& result,
                                 const ExperimentConfig& cfg, Rng& rng);

// Full protocol: per run r (seeded independently from cfg.seed and r), draw
// a degree-binned source, simulate, reveal timestamps, rank with every
// configured algorithm, and record the source's rank. Retryable simulation
// failures re-draw within the run (bounded). Deterministic for fixed seed
// and any jobs value.
AccuracyReport run_experiment(const Graph& g, const ExperimentConfig& cfg, int jobs = 1);

// Repeats the protocol on graphs with k random connectivity-preserving edge
// removals for each k in removals (0 reproduces run_experiment exactly).
std::vector<std::pair<int, AccuracyReport>> run_edge_removal_experiment(
    const Graph& g, const ExperimentConfig& cfg, const std::vector<int>& removals,
    int jobs = 1);

// CSV renderings (deterministic byte-for-byte for a fixed report).
// accuracy rows: "algorithm,gamma,accuracy,runs,config_hash"
std::string report_csv(const AccuracyReport& report);
// per-run rows: "run,algorithm,source,rank,infected_count" (source labeled)
std::string runs_csv(const AccuracyReport& report, const Graph& g);
// edge-removal rows: "removals,algorithm,gamma,accuracy,runs,config_hash"
std::string removal_report_csv(const std::vector<std::pair<int, AccuracyReport>>& reports);

std::string model_tag(Model m);
std::string dist_tag(SampleDist d);

}  // namespace srcrank
