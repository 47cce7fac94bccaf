#include "srcrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srcrank/io.hpp"
#include "srcrank/parallel.hpp"

namespace srcrank {

std::string model_tag(Model m) { return m == Model::Gaussian ? "gaussian" : "ic"; }
std::string dist_tag(SampleDist d) { return d == SampleDist::Unbiased ? "unbiased" : "biased"; }

namespace {

std::string join_doubles(const std::vector<double>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += format_double(xs[i]);
  }
  return s;
}

std::string join_algos(const std::vector<Algo>& as) {
  std::string s;
  for (size_t i = 0; i < as.size(); ++i) {
    if (i) s += ",";
    s += algo_tag(as[i]);
  }
  return s;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw Error("experiment: runs must be >= 1");
  if (cfg.algorithms.empty()) throw Error("experiment: no algorithms configured");
  if (cfg.gammas.empty()) throw Error("experiment: no gamma values configured");
  for (double gm : cfg.gammas)
    if (!(gm > 0 && gm <= 100)) throw Error("experiment: gamma must be in (0, 100]");
  if (!(cfg.fraction > 0 && cfg.fraction <= 1))
    throw Error("experiment: fraction must be in (0, 1]");
  if (cfg.stop_count < 2) throw Error("experiment: stop_count must be >= 2");
  if (cfg.bins < 1) throw Error("experiment: bins must be >= 1");
  if (!(cfg.mu > 0) || cfg.sigma < 0) throw Error("experiment: need mu > 0, sigma >= 0");
}

}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  // canonical key=value rendering, keys sorted; runtime knobs like jobs are
  // deliberately absent so they cannot change reported results
  std::ostringstream ss;
  ss << "algorithms=" << join_algos(cfg.algorithms) << '\n'
     << "bins=" << cfg.bins << '\n'
     << "directed=" << (cfg.directed ? 1 : 0) << '\n'
     << "dist=" << dist_tag(cfg.dist) << '\n'
     << "fraction=" << format_double(cfg.fraction) << '\n'
     << "gammas=" << join_doubles(cfg.gammas) << '\n'
     << "graph=" << cfg.graph_path << '\n'
     << "include_source_timestamp=" << (cfg.include_source_timestamp ? 1 : 0) << '\n'
     << "model=" << model_tag(cfg.model) << '\n'
     << "mu=" << format_double(cfg.mu) << '\n'
     << "runs=" << cfg.runs << '\n'
     << "seed=" << cfg.seed << '\n'
     << "sigma=" << format_double(cfg.sigma) << '\n'
     << "stop_count=" << cfg.stop_count << '\n';
  std::string s = ss.str();
  uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

double gamma_accuracy(const std::vector<std::pair<int, int>>& rank_and_size, double gamma) {
  if (!(gamma > 0 && gamma <= 100)) throw Error("gamma_accuracy: gamma must be in (0, 100]");
  if (rank_and_size.empty()) throw Error("gamma_accuracy: no runs");
  long long hits = 0;
  for (auto [rank, size] : rank_and_size) {
    if (rank < 1 || size < 1) throw Error("gamma_accuracy: bad rank or size");
    int top = int(std::ceil(gamma * double(size) / 100.0 - 1e-9));
    if (top < 1) top = 1;
    if (rank <= top) ++hits;
  }
  return double(hits) / double(rank_and_size.size());
}

double AccuracyReport::accuracy(Algo a, double gamma) const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& rec : records)
    if (rec.algo == a) pairs.emplace_back(rec.rank, rec.infected_count);
  return gamma_accuracy(pairs, gamma);
}

Observation make_run_observation(const ContagionResult& result,
                                 const ExperimentConfig& cfg, Rng& rng) {
  Observation obs = cfg.dist == SampleDist::Unbiased
                        ? sample_observed_unbiased(result, cfg.fraction, rng,
                                                   cfg.include_source_timestamp)
                        : sample_observed_time_biased(result, cfg.fraction, rng,
                                                      cfg.include_source_timestamp);
  if (cfg.model == Model::IC) {
    // slotted times tie constantly; nudge each observed timestamp by a
    // sub-slot jitter so downstream orderings are strict
    for (auto& [v, t] : obs.tau) t += rng.uniform01() * 1e-9;
  }
  return obs;
}

AccuracyReport run_experiment(const Graph& g, const ExperimentConfig& cfg, int jobs) {
  validate_config(cfg);
  AccuracyReport report;
  report.algorithms = cfg.algorithms;
  report.gammas = cfg.gammas;
  report.runs = cfg.runs;
  report.hash = config_hash(cfg);
  std::vector<std::vector<RunRecord>> slots(cfg.runs);
  Rng base(cfg.seed);
  parallel_for(cfg.runs, jobs, [&](int run) {
    Rng rng = base.derive(uint64_t(run));
    ContagionResult result;
    bool simulated = false;
    std::string last_error;
    for (int attempt = 0; attempt < 100 && !simulated; ++attempt) {
      try {
        int source = sample_source_degree_binned(g, cfg.bins, rng);
        result = cfg.model == Model::Gaussian
                     ? simulate_trunc_gaussian(g, source, cfg.mu, cfg.sigma,
                                               cfg.stop_count, rng)
                     : simulate_ic(g, source, cfg.stop_count, rng);
        simulated = true;
      } catch (const RetryableError& e) {
        last_error = e.what();
      }
    }
    if (!simulated)
      throw Error("run " + std::to_string(run) +
                  ": simulation failed after 100 attempts; last: " + last_error);
    validate_contagion(g, result);
    Observation obs = make_run_observation(result, cfg, rng);
    auto rankings = rank_real_cascade(g, obs, cfg.algorithms, {}, 1);
    for (const auto& r : rankings) {
      RunRecord rec;
      rec.run = run;
      rec.algo = r.algo;
      rec.source = result.source;
      rec.rank = r.rank_of(result.source);
      rec.infected_count = int(result.infected.size());
      slots[run].push_back(rec);
    }
  });
  for (auto& s : slots)
    for (auto& rec : s) report.records.push_back(rec);
  return report;
}

std::vector<std::pair<int, AccuracyReport>> run_edge_removal_experiment(
    const Graph& g, const ExperimentConfig& cfg, const std::vector<int>& removals,
    int jobs) {
  if (removals.empty()) throw Error("edge removal experiment: empty removal list");
  std::vector<std::pair<int, AccuracyReport>> out;
  Rng base(cfg.seed);
  for (size_t level = 0; level < removals.size(); ++level) {
    // removal stream is disjoint from all per-run streams, so removals=[0]
    // reproduces run_experiment exactly
    Rng removal_rng = base.derive((1ULL << 32) + level);
    Graph reduced = remove_random_edges_connected(g, removals[level], removal_rng);
    out.emplace_back(removals[level], run_experiment(reduced, cfg, jobs));
  }
  return out;
}

std::string report_csv(const AccuracyReport& report) {
  std::string s = "algorithm,gamma,accuracy,runs,config_hash\n";
  for (Algo a : report.algorithms)
    for (double gm : report.gammas)
      s += algo_tag(a) + "," + format_double(gm) + "," +
           format_double(report.accuracy(a, gm)) + "," + std::to_string(report.runs) +
           "," + report.hash + "\n";
  return s;
}

std::string runs_csv(const AccuracyReport& report, const Graph& g) {
  std::string s = "run,algorithm,source,rank,infected_count\n";
  for (const auto& rec : report.records)
    s += std::to_string(rec.run) + "," + algo_tag(rec.algo) + "," + g.labels[rec.source] +
         "," + std::to_string(rec.rank) + "," + std::to_string(rec.infected_count) + "\n";
  return s;
}

std::string removal_report_csv(const std::vector<std::pair<int, AccuracyReport>>& reports) {
  std::string s = "removals,algorithm,gamma,accuracy,runs,config_hash\n";
  for (const auto& [k, report] : reports)
    for (Algo a : report.algorithms)
      for (double gm : report.gammas)
        s += std::to_string(k) + "," + algo_tag(a) + "," + format_double(gm) + "," +
             format_double(report.accuracy(a, gm)) + "," + std::to_string(report.runs) +
             "," + report.hash + "\n";
  return s;
}

}  // namespace srcrank
