#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "srcrank/diffusion.hpp"
#include "srcrank/eval.hpp"
#include "srcrank/graph.hpp"
#include "srcrank/rng.hpp"

using namespace srcrank;

namespace {

Graph random_connected(int n, int extra, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  for (int i = 1; i < n; ++i) {
    edges.emplace_back(rng.uniform_int(i), i);
    seen.insert(edges.back());
  }
  while (extra > 0) {
    int u = rng.uniform_int(n), v = rng.uniform_int(n);
    auto e = std::minmax(u, v);
    if (u == v || !seen.insert({e.first, e.second}).second) continue;
    edges.emplace_back(u, v);
    --extra;
  }
  return make_graph(n, edges, false);
}

ContagionResult hand_result(int source, const std::vector<double>& times) {
  ContagionResult r;
  r.source = source;
  for (int v = 0; v < int(times.size()); ++v) {
    r.infected.push_back(v);
    r.times[v] = times[v];
  }
  return r;
}

ExperimentConfig base_cfg() {
  ExperimentConfig cfg;
  cfg.graph_path = "in-memory";
  cfg.model = Model::Gaussian;
  cfg.mu = 10.0;
  cfg.sigma = 10.0;
  cfg.stop_count = 12;
  cfg.bins = 4;
  cfg.fraction = 0.5;
  cfg.algorithms = all_algos();
  cfg.runs = 6;
  cfg.gammas = {5, 10, 20, 100};
  cfg.seed = 41;
  return cfg;
}

int count_lines(const std::string& s) {
  return int(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("gamma accuracy counts sources inside the rounded-up cutoff") {
  // gamma=10 of 200 infected admits ranks 1..20
  CHECK(gamma_accuracy({{15, 200}}, 10) == doctest::Approx(1.0));
  CHECK(gamma_accuracy({{20, 200}}, 10) == doctest::Approx(1.0));
  CHECK(gamma_accuracy({{21, 200}}, 10) == doctest::Approx(0.0));
  // cutoff rounds up: 10% of 15 admits rank 2, 10% of 20 does not admit 3
  CHECK(gamma_accuracy({{2, 15}}, 10) == doctest::Approx(1.0));
  CHECK(gamma_accuracy({{3, 20}}, 10) == doctest::Approx(0.0));
  // the cutoff never drops below one
  CHECK(gamma_accuracy({{1, 10}}, 1) == doctest::Approx(1.0));
  CHECK(gamma_accuracy({{2, 10}}, 1) == doctest::Approx(0.0));
  // gamma=100 admits everything
  CHECK(gamma_accuracy({{200, 200}, {1, 3}}, 100) == doctest::Approx(1.0));
  CHECK(gamma_accuracy({{1, 9}, {5, 9}, {9, 9}}, 50) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("gamma accuracy rejects bad arguments") {
  CHECK_THROWS_AS(gamma_accuracy({}, 10), Error);
  CHECK_THROWS_AS(gamma_accuracy({{1, 10}}, 0), Error);
  CHECK_THROWS_AS(gamma_accuracy({{1, 10}}, 101), Error);
  CHECK_THROWS_AS(gamma_accuracy({{0, 10}}, 10), Error);
  CHECK_THROWS_AS(gamma_accuracy({{1, 0}}, 10), Error);
}

TEST_CASE("report accuracy filters records by algorithm") {
  AccuracyReport rep;
  rep.algorithms = {Algo::CR, Algo::RUM};
  rep.gammas = {10};
  rep.runs = 2;
  rep.records = {{0, Algo::CR, 3, 1, 100},
                 {0, Algo::RUM, 3, 80, 100},
                 {1, Algo::CR, 5, 40, 100},
                 {1, Algo::RUM, 5, 2, 100}};
  CHECK(rep.accuracy(Algo::CR, 10) == doctest::Approx(0.5));
  CHECK(rep.accuracy(Algo::RUM, 10) == doctest::Approx(0.5));
  CHECK(rep.accuracy(Algo::CR, 50) == doctest::Approx(1.0));
}

TEST_CASE("slotted cascades get sub-slot jitter, continuous ones do not") {
  ContagionResult r = hand_result(0, {0, 1, 1, 2, 2, 3, 3, 3, 4, 4});
  ExperimentConfig cfg = base_cfg();
  cfg.fraction = 0.5;

  cfg.model = Model::IC;
  Rng rng(5);
  Observation obs = make_run_observation(r, cfg, rng);
  CHECK(obs.tau.size() == 5);
  std::set<double> seen;
  for (const auto& [v, t] : obs.tau) {
    CHECK(v != r.source);
    CHECK(std::abs(t - std::round(t)) <= 2e-9);
    CHECK(seen.insert(t).second);  // jitter separates equal slots
  }

  cfg.model = Model::Gaussian;
  Rng rng2(5);
  Observation obs2 = make_run_observation(r, cfg, rng2);
  for (const auto& [v, t] : obs2.tau) CHECK(t == r.times.at(v));
}

TEST_CASE("the source timestamp stays hidden unless the ablation flag opens it") {
  ContagionResult r = hand_result(2, {3, 4, 0, 6, 8, 10});
  ExperimentConfig cfg = base_cfg();
  cfg.fraction = 0.6;
  Rng rng(9);
  int with_flag = 0;
  for (int i = 0; i < 200; ++i) {
    Rng run = rng.derive(i);
    cfg.include_source_timestamp = false;
    CHECK(make_run_observation(r, cfg, run).tau.count(2) == 0);
    cfg.include_source_timestamp = true;
    with_flag += int(make_run_observation(r, cfg, run).tau.count(2));
  }
  CHECK(with_flag > 0);
}

TEST_CASE("experiments have a fixed record shape and in-run agreement") {
  Rng g_rng(23);
  Graph g = random_connected(30, 15, g_rng);
  ExperimentConfig cfg = base_cfg();
  auto rep = run_experiment(g, cfg);
  CHECK(rep.runs == cfg.runs);
  CHECK(rep.hash == config_hash(cfg));
  REQUIRE(rep.records.size() == size_t(cfg.runs) * cfg.algorithms.size());
  for (int run = 0; run < cfg.runs; ++run) {
    size_t off = size_t(run) * cfg.algorithms.size();
    for (size_t i = 0; i < cfg.algorithms.size(); ++i) {
      const RunRecord& rec = rep.records[off + i];
      CHECK(rec.run == run);
      CHECK(rec.algo == cfg.algorithms[i]);
      CHECK(rec.source == rep.records[off].source);
      CHECK(rec.infected_count == cfg.stop_count);
      CHECK(rec.rank >= 1);
      CHECK(rec.rank <= rec.infected_count);
    }
  }
}

TEST_CASE("accuracy grows with gamma and saturates at one hundred percent") {
  Rng g_rng(29);
  Graph g = random_connected(26, 10, g_rng);
  ExperimentConfig cfg = base_cfg();
  cfg.runs = 8;
  auto rep = run_experiment(g, cfg);
  for (Algo a : cfg.algorithms) {
    double prev = 0;
    for (double gm : cfg.gammas) {
      double acc = rep.accuracy(a, gm);
      CHECK(acc >= prev - 1e-12);
      prev = acc;
    }
    CHECK(rep.accuracy(a, 100) == doctest::Approx(1.0));
  }
}

TEST_CASE("experiments are reproducible and parallelism cannot change them") {
  Rng g_rng(31);
  Graph g = random_connected(24, 12, g_rng);
  ExperimentConfig cfg = base_cfg();
  cfg.runs = 5;
  auto a = run_experiment(g, cfg, 1);
  auto b = run_experiment(g, cfg, 1);
  auto c = run_experiment(g, cfg, 3);
  CHECK(report_csv(a) == report_csv(b));
  CHECK(report_csv(a) == report_csv(c));
  CHECK(runs_csv(a, g) == runs_csv(b, g));
  CHECK(runs_csv(a, g) == runs_csv(c, g));

  ExperimentConfig other = cfg;
  other.seed = cfg.seed + 1;
  auto d = run_experiment(g, other, 1);
  CHECK(runs_csv(a, g) != runs_csv(d, g));
}

TEST_CASE("a graph too small for the stop count exhausts the retry budget") {
  Graph g = make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7},
                            {7, 8}, {8, 9}},
                       false);
  ExperimentConfig cfg = base_cfg();
  cfg.stop_count = 200;
  cfg.runs = 1;
  CHECK_THROWS_WITH_AS(run_experiment(g, cfg), doctest::Contains("100 attempts"), Error);
}

TEST_CASE("invalid configurations are rejected up front") {
  Graph g = make_graph(3, {{0, 1}, {1, 2}}, false);
  ExperimentConfig cfg = base_cfg();
  cfg.runs = 0;
  CHECK_THROWS_AS(run_experiment(g, cfg), Error);
  cfg = base_cfg();
  cfg.algorithms.clear();
  CHECK_THROWS_AS(run_experiment(g, cfg), Error);
  cfg = base_cfg();
  cfg.gammas = {0};
  CHECK_THROWS_AS(run_experiment(g, cfg), Error);
  cfg = base_cfg();
  cfg.fraction = 0;
  CHECK_THROWS_AS(run_experiment(g, cfg), Error);
  cfg = base_cfg();
  cfg.stop_count = 1;
  CHECK_THROWS_AS(run_experiment(g, cfg), Error);
}

TEST_CASE("the independent-cascade protocol runs end to end") {
  Rng g_rng(37);
  Graph g = random_connected(40, 60, g_rng);
  ExperimentConfig cfg = base_cfg();
  cfg.model = Model::IC;
  cfg.stop_count = 10;
  cfg.runs = 4;
  auto rep = run_experiment(g, cfg);
  CHECK(rep.records.size() == size_t(cfg.runs) * cfg.algorithms.size());
  auto again = run_experiment(g, cfg, 2);
  CHECK(runs_csv(rep, g) == runs_csv(again, g));
}

TEST_CASE("zero removals reproduce the plain experiment byte for byte") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 12; ++i) edges.emplace_back(i, (i + 1) % 12);
  edges.emplace_back(0, 6);
  edges.emplace_back(3, 9);
  Graph g = make_graph(12, edges, false);
  ExperimentConfig cfg = base_cfg();
  cfg.stop_count = 8;
  cfg.runs = 4;
  auto plain = run_experiment(g, cfg);
  auto levels = run_edge_removal_experiment(g, cfg, {0, 1});
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].first == 0);
  CHECK(levels[1].first == 1);
  CHECK(report_csv(levels[0].second) == report_csv(plain));
  CHECK(runs_csv(levels[0].second, g) == runs_csv(plain, g));

  std::string csv = removal_report_csv(levels);
  CHECK(csv.rfind("removals,algorithm,gamma,accuracy,runs,config_hash\n", 0) == 0);
  int expect_rows = 2 * int(cfg.algorithms.size() * cfg.gammas.size());
  CHECK(count_lines(csv) == expect_rows + 1);

  CHECK_THROWS_AS(run_edge_removal_experiment(g, cfg, {}), Error);
  Graph tree = make_graph(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7},
                              {7, 8}},
                          false);
  CHECK_THROWS_AS(run_edge_removal_experiment(tree, cfg, {1}), Error);
}

TEST_CASE("config hashes react to every reported knob and ignore runtime ones") {
  ExperimentConfig cfg = base_cfg();
  std::string h = config_hash(cfg);
  CHECK(h == config_hash(cfg));
  CHECK(h.size() == 16);

  auto differs = [&](auto mutate) {
    ExperimentConfig c = base_cfg();
    mutate(c);
    return config_hash(c) != h;
  };
  CHECK(differs([](ExperimentConfig& c) { c.seed = 99; }));
  CHECK(differs([](ExperimentConfig& c) { c.mu = 7; }));
  CHECK(differs([](ExperimentConfig& c) { c.sigma = 1; }));
  CHECK(differs([](ExperimentConfig& c) { c.fraction = 0.25; }));
  CHECK(differs([](ExperimentConfig& c) { c.algorithms = {Algo::CR}; }));
  CHECK(differs([](ExperimentConfig& c) { c.gammas = {1}; }));
  CHECK(differs([](ExperimentConfig& c) { c.graph_path = "other"; }));
  CHECK(differs([](ExperimentConfig& c) { c.model = Model::IC; }));
  CHECK(differs([](ExperimentConfig& c) { c.dist = SampleDist::Biased; }));
  CHECK(differs([](ExperimentConfig& c) { c.stop_count = 50; }));
  CHECK(differs([](ExperimentConfig& c) { c.bins = 2; }));
  CHECK(differs([](ExperimentConfig& c) { c.include_source_timestamp = true; }));
}

TEST_CASE("CSV renderings carry the documented headers and row counts") {
  Rng g_rng(43);
  Graph g = random_connected(20, 8, g_rng);
  ExperimentConfig cfg = base_cfg();
  cfg.stop_count = 8;
  cfg.runs = 3;
  cfg.algorithms = {Algo::CR, Algo::NETSLEUTH};
  cfg.gammas = {10, 50};
  auto rep = run_experiment(g, cfg);

  std::string acc = report_csv(rep);
  CHECK(acc.rfind("algorithm,gamma,accuracy,runs,config_hash\n", 0) == 0);
  CHECK(count_lines(acc) == 1 + 2 * 2);
  for (size_t pos = acc.find('\n') + 1; pos < acc.size();) {
    size_t end = acc.find('\n', pos);
    std::string row = acc.substr(pos, end - pos);
    CHECK(std::count(row.begin(), row.end(), ',') == 4);
    CHECK(row.find(rep.hash) != std::string::npos);
    pos = end + 1;
  }

  std::string runs = runs_csv(rep, g);
  CHECK(runs.rfind("run,algorithm,source,rank,infected_count\n", 0) == 0);
  CHECK(count_lines(runs) == 1 + int(rep.records.size()));
}
