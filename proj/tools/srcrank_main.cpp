#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srcrank/eif.hpp"
#include "srcrank/eval.hpp"
#include "srcrank/io.hpp"
#include "srcrank/oracle.hpp"
#include "srcrank/ranking.hpp"

namespace {

using namespace srcrank;

// Bad invocations (including ones only detectable after reading inputs)
// exit 2, runtime failures exit 1.
struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<Algo> parse_algos(const std::string& s) {
  if (s == "all") return all_algos();
  std::vector<Algo> out;
  for (const auto& tok : split_list(s)) {
    auto a = algo_from_tag(tok);
    if (!a) throw Error("unknown algorithm tag: " + tok);
    out.push_back(*a);
  }
  if (out.empty()) throw Error("no algorithms given");
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split_list(s)) {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw Error("bad number in list: " + tok);
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split_list(s)) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw Error("bad integer in list: " + tok);
    out.push_back(v);
  }
  return out;
}

const CLI::Validator AlgoList(
    [](std::string& s) -> std::string {
      if (s == "all") return "";
      for (const auto& tok : split_list(s))
        if (!algo_from_tag(tok))
          return "unknown algorithm '" + tok +
                 "' (expected cr, tr, rum, ecce, netsleuth, gau or all)";
      return "";
    },
    "ALGOS");

Graph load_graph(const std::string& path, bool directed) {
  LoadStats stats;
  Graph g = load_edge_list(path, directed, &stats);
  if (stats.duplicate_edges || stats.self_loops)
    std::cerr << "note: dropped " << stats.duplicate_edges << " duplicate edges, "
              << stats.self_loops << " self-loops\n";
  return g;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << text;
}

struct SimulateOpts {
  std::string graph, source_label, observation, truth_out;
  bool directed = false;
  std::string model = "gaussian", dist = "unbiased";
  double mu = 100.0, sigma = 100.0, fraction = 0.5;
  int stop_count = 200, bins = 20;
  uint64_t seed = 1;
  bool include_source = false;
};

void run_simulate(const SimulateOpts& o) {
  Graph g = load_graph(o.graph, o.directed);
  Rng rng(o.seed);
  int source;
  if (!o.source_label.empty()) {
    source = g.node_id(o.source_label);
    if (source < 0) throw Error("unknown source label: " + o.source_label);
  } else {
    source = sample_source_degree_binned(g, o.bins, rng);
  }
  ContagionResult result =
      o.model == "gaussian"
          ? simulate_trunc_gaussian(g, source, o.mu, o.sigma, o.stop_count, rng)
          : simulate_ic(g, source, o.stop_count, rng);
  ExperimentConfig cfg;
  cfg.model = o.model == "gaussian" ? Model::Gaussian : Model::IC;
  cfg.dist = o.dist == "unbiased" ? SampleDist::Unbiased : SampleDist::Biased;
  cfg.fraction = o.fraction;
  cfg.include_source_timestamp = o.include_source;
  Observation obs = make_run_observation(result, cfg, rng);
  if (!o.truth_out.empty()) write_truth_file(g, result, o.truth_out);
  if (!o.observation.empty()) write_observation_file(g, obs, o.observation);
  std::cout << "source " << g.label(source) << "\n"
            << "infected " << result.infected.size() << "\n"
            << "observed " << obs.tau.size() << "\n";
}

struct RankOpts {
  std::string graph, observation, algos = "all", out, timestamps;
  bool directed = false;
  double mu = 0.0;  // 0 = estimate
  int jobs = 1;
};

void run_rank(const RankOpts& o) {
  Graph g = load_graph(o.graph, o.directed);
  Observation obs = read_observation_file(g, o.observation);
  std::optional<double> mu;
  if (o.mu > 0) mu = o.mu;
  if (!mu && obs.tau.size() < 2)
    throw UsageError("fewer than two observed timestamps in " + o.observation +
                     "; the per-hop delay cannot be estimated, pass --mu");
  auto rankings = rank_real_cascade(g, obs, parse_algos(o.algos), mu, o.jobs);
  std::string text = "rank,node,score,algorithm\n";
  for (const auto& r : rankings)
    for (size_t i = 0; i < r.ordered.size(); ++i) {
      int v = r.ordered[i];
      text += std::to_string(i + 1) + "," + g.label(v) + "," +
              format_double(r.score.at(v)) + "," + algo_tag(r.algo) + "\n";
    }
  write_out(text, o.out);
  if (!o.timestamps.empty()) {
    EifSweep sweep = eif_sweep(g, obs, mu, o.jobs);
    if (sweep.best < 0) throw Error("no feasible spreading tree; nothing to write");
    std::vector<std::string> labels;
    labels.reserve(sweep.to_original.size());
    for (int v : sweep.to_original) labels.push_back(g.label(v));
    std::ofstream os(o.timestamps);
    if (!os) throw Error("cannot write " + o.timestamps);
    write_tree(sweep.best_tree, labels, os);
  }
}

struct EvaluateOpts {
  std::string graph, algos = "all", gammas = "1,5,10,20", removals, out, runs_out;
  bool directed = false;
  std::string model = "gaussian", dist = "unbiased";
  double mu = 100.0, sigma = 100.0, fraction = 0.5;
  int stop_count = 200, bins = 20, runs = 100, jobs = 1;
  uint64_t seed = 1;
  bool include_source = false;
};

void run_evaluate(const EvaluateOpts& o) {
  Graph g = load_graph(o.graph, o.directed);
  ExperimentConfig cfg;
  cfg.graph_path = o.graph;
  cfg.directed = o.directed;
  cfg.model = o.model == "gaussian" ? Model::Gaussian : Model::IC;
  cfg.mu = o.mu;
  cfg.sigma = o.sigma;
  cfg.stop_count = o.stop_count;
  cfg.bins = o.bins;
  cfg.fraction = o.fraction;
  cfg.dist = o.dist == "unbiased" ? SampleDist::Unbiased : SampleDist::Biased;
  cfg.algorithms = parse_algos(o.algos);
  cfg.runs = o.runs;
  cfg.gammas = parse_doubles(o.gammas);
  cfg.seed = o.seed;
  cfg.include_source_timestamp = o.include_source;
  if (!o.removals.empty()) {
    if (!o.runs_out.empty())
      throw Error("--runs-out is not supported together with --removals");
    auto reports = run_edge_removal_experiment(g, cfg, parse_ints(o.removals), o.jobs);
    write_out(removal_report_csv(reports), o.out);
    return;
  }
  AccuracyReport report = run_experiment(g, cfg, o.jobs);
  write_out(report_csv(report), o.out);
  if (!o.runs_out.empty()) write_out(runs_csv(report, g), o.runs_out);
}

struct OracleOpts {
  std::string graph, observation;
  bool directed = false;
  double mu = 0.0;
};

void run_oracle_ratio(const OracleOpts& o) {
  Graph g = load_graph(o.graph, o.directed);
  Observation obs = read_observation_file(g, o.observation);
  if (o.mu <= 0 && obs.tau.size() < 2)
    throw UsageError("fewer than two observed timestamps in " + o.observation +
                     "; the per-hop delay cannot be estimated, pass --mu");
  double mu = o.mu > 0 ? o.mu : estimate_mu(g, obs);
  RatioResult r = approximation_ratio(g, obs, mu);
  std::cout << "ratio,exact_cost,greedy_cost,degenerate,note\n"
            << format_double(r.ratio) << "," << format_double(r.exact_cost) << ","
            << format_double(r.eif_cost) << "," << (r.degenerate ? 1 : 0) << ","
            << r.note << "\n";
}

struct RemoveOpts {
  std::string graph, out;
  int count = 0;
  uint64_t seed = 1;
};

void run_remove_edges(const RemoveOpts& o) {
  Graph g = load_graph(o.graph, false);
  Rng rng(o.seed);
  Graph reduced = remove_random_edges_connected(g, o.count, rng);
  write_edge_list(reduced, o.out);
  std::cout << "removed " << o.count << " edges; " << reduced.node_count() << " nodes "
            << reduced.edge_count() << " edges remain\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spreading-tree source localization toolkit"};
  app.set_version_flag("--version", "srcrank 1.0.0");
  // config values live under an [evaluate] section; explicit flags win
  app.set_config("--config", "", "read options from an INI file ([evaluate] section)");
  app.require_subcommand(1);

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "simulate one cascade and reveal timestamps");
  sim->add_option("--graph", so.graph, "edge list file")->required();
  sim->add_flag("--directed", so.directed, "treat the edge list as directed");
  sim->add_option("--model", so.model, "contagion model")
      ->check(CLI::IsMember({"gaussian", "ic"}));
  sim->add_option("--mu", so.mu, "mean arc delay")->check(CLI::PositiveNumber);
  sim->add_option("--sigma", so.sigma, "arc delay standard deviation")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--stop-count", so.stop_count, "halt after this many infections")
      ->check(CLI::Range(2, 1 << 30));
  sim->add_option("--source", so.source_label, "source node label (default: degree-binned draw)");
  sim->add_option("--bins", so.bins, "degree bins for source sampling")
      ->check(CLI::PositiveNumber);
  sim->add_option("--fraction", so.fraction, "fraction of infected nodes revealed")
      ->check(CLI::Range(1e-9, 1.0));
  sim->add_option("--dist", so.dist, "revelation distribution")
      ->check(CLI::IsMember({"unbiased", "biased"}));
  sim->add_flag("--include-source-timestamp", so.include_source,
                "allow the source's own timestamp to be revealed");
  sim->add_option("--seed", so.seed, "random seed");
  sim->add_option("--observation", so.observation, "write the observation file here");
  sim->add_option("--truth-out", so.truth_out, "write the ground-truth file here");
  sim->callback([&] { run_simulate(so); });

  RankOpts ro;
  auto* rnk = app.add_subcommand("rank", "rank source candidates for an observation");
  rnk->add_option("--graph", ro.graph, "edge list file")->required();
  rnk->add_flag("--directed", ro.directed, "treat the edge list as directed");
  rnk->add_option("--observation", ro.observation, "observation file")->required();
  rnk->add_option("--algo", ro.algos, "comma list of algorithms or 'all'")->check(AlgoList);
  rnk->add_option("--mu", ro.mu, "mean arc delay (default: estimated)")
      ->check(CLI::PositiveNumber);
  rnk->add_option("--jobs", ro.jobs, "worker threads")->check(CLI::PositiveNumber);
  rnk->add_option("--out", ro.out, "write the ranking CSV here (default: stdout)");
  rnk->add_option("--timestamps", ro.timestamps,
                  "write the best candidate's spreading tree here");
  rnk->callback([&] { run_rank(ro); });

  EvaluateOpts eo;
  auto* ev = app.add_subcommand("evaluate", "run the ranking accuracy protocol");
  ev->fallthrough();  // lets --config appear after the subcommand name
  ev->add_option("--graph", eo.graph, "edge list file")->required();
  ev->add_flag("--directed", eo.directed, "treat the edge list as directed");
  ev->add_option("--model", eo.model, "contagion model")
      ->check(CLI::IsMember({"gaussian", "ic"}));
  ev->add_option("--mu", eo.mu, "mean arc delay")->check(CLI::PositiveNumber);
  ev->add_option("--sigma", eo.sigma, "arc delay standard deviation")
      ->check(CLI::NonNegativeNumber);
  ev->add_option("--stop-count", eo.stop_count, "halt after this many infections")
      ->check(CLI::Range(2, 1 << 30));
  ev->add_option("--bins", eo.bins, "degree bins for source sampling")
      ->check(CLI::PositiveNumber);
  ev->add_option("--fraction", eo.fraction, "fraction of infected nodes revealed")
      ->check(CLI::Range(1e-9, 1.0));
  ev->add_option("--dist", eo.dist, "revelation distribution")
      ->check(CLI::IsMember({"unbiased", "biased"}));
  ev->add_option("--algo", eo.algos, "comma list of algorithms or 'all'")->check(AlgoList);
  ev->add_option("--runs", eo.runs, "independent runs")->check(CLI::PositiveNumber);
  ev->add_option("--gammas", eo.gammas, "comma list of gamma percentages");
  ev->add_option("--seed", eo.seed, "random seed");
  ev->add_option("--jobs", eo.jobs, "worker threads")->check(CLI::PositiveNumber);
  ev->add_flag("--include-source-timestamp", eo.include_source,
               "allow the source's own timestamp to be revealed");
  ev->add_option("--removals", eo.removals,
                 "comma list of edge-removal counts (runs the robustness protocol)");
  ev->add_option("--out", eo.out, "write the accuracy CSV here (default: stdout)");
  ev->add_option("--runs-out", eo.runs_out, "write the per-run CSV here");
  ev->callback([&] { run_evaluate(eo); });

  OracleOpts oo;
  auto* orr = app.add_subcommand("oracle-ratio",
                                 "compare the greedy cost against exact enumeration");
  orr->add_option("--graph", oo.graph, "edge list file")->required();
  orr->add_flag("--directed", oo.directed, "treat the edge list as directed");
  orr->add_option("--observation", oo.observation, "observation file")->required();
  orr->add_option("--mu", oo.mu, "mean arc delay (default: estimated)")
      ->check(CLI::PositiveNumber);
  orr->callback([&] { run_oracle_ratio(oo); });

  RemoveOpts mo;
  auto* rm = app.add_subcommand("remove-edges",
                                "remove random edges while preserving connectivity");
  rm->add_option("--graph", mo.graph, "edge list file")->required();
  rm->add_option("--count", mo.count, "number of edges to remove")
      ->required()
      ->check(CLI::NonNegativeNumber);
  rm->add_option("--seed", mo.seed, "random seed");
  rm->add_option("--out", mo.out, "write the reduced edge list here")->required();
  rm->callback([&] { run_remove_edges(mo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
