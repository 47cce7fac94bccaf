#include "srcrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace srcrank {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

Observation read_observation_file(const Graph& g, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("read_observation_file: cannot open " + path);
  Observation obs;
  std::string line;
  long long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string label;
    if (!(ss >> label)) continue;
    int v = g.node_id(label);
    if (v < 0)
      throw Error("read_observation_file: unknown node '" + label + "' at line " +
                  std::to_string(lineno));
    obs.infected.push_back(v);
    std::string time, extra;
    if (ss >> time) {
      if (ss >> extra)
        throw Error("read_observation_file: malformed line " + std::to_string(lineno));
      try {
        obs.tau[v] = std::stod(time);
      } catch (const std::exception&) {
        throw Error("read_observation_file: bad timestamp at line " + std::to_string(lineno));
      }
    }
  }
  std::sort(obs.infected.begin(), obs.infected.end());
  auto dup = std::unique(obs.infected.begin(), obs.infected.end());
  if (dup != obs.infected.end()) throw Error("read_observation_file: duplicate node");
  return obs;
}

void write_observation_file(const Graph& g, const Observation& obs, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("write_observation_file: cannot open " + path);
  for (int v : obs.infected) {
    f << g.labels[v];
    auto it = obs.tau.find(v);
    if (it != obs.tau.end()) f << ' ' << format_double(it->second);
    f << '\n';
  }
}

ContagionResult read_truth_file(const Graph& g, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("read_truth_file: cannot open " + path);
  ContagionResult r;
  std::string line;
  bool have_source = false;
  long long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a)) continue;
    if (!(ss >> b)) throw Error("read_truth_file: malformed line " + std::to_string(lineno));
    if (!have_source) {
      if (a != "source")
        throw Error("read_truth_file: first line must be 'source <label>'");
      r.source = g.node_id(b);
      if (r.source < 0) throw Error("read_truth_file: unknown source " + b);
      have_source = true;
      continue;
    }
    int v = g.node_id(a);
    if (v < 0) throw Error("read_truth_file: unknown node " + a);
    r.times[v] = std::stod(b);
    r.infected.push_back(v);
  }
  if (!have_source) throw Error("read_truth_file: missing source line");
  std::sort(r.infected.begin(), r.infected.end());
  return r;
}

void write_truth_file(const Graph& g, const ContagionResult& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("write_truth_file: cannot open " + path);
  f << "source " << g.labels[r.source] << '\n';
  for (int v : r.infected) f << g.labels[v] << ' ' << format_double(r.times.at(v)) << '\n';
}

}  // namespace srcrank
