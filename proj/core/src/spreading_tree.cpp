#include "srcrank/spreading_tree.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "srcrank/io.hpp"

namespace srcrank {

double tree_cost(const SpreadingTree& t, double mu) {
  double cost = 0;
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.parent[v] < 0) continue;
    double gap = t.time[v] - t.time[t.parent[v]] - mu;
    cost += gap * gap;
  }
  return cost;
}

bool is_feasible_consistent(const SpreadingTree& t, const std::map<int, double>& tau,
                            std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int n = t.node_count();
  if (n == 0) return fail("empty tree");
  if (t.root < 0 || t.root >= n || t.parent[t.root] != -1)
    return fail("root missing or rooted incorrectly");
  if (int(t.time.size()) != n) return fail("times not assigned for every node");
  // every node must reach the root through parent pointers (tree spans all)
  for (int v = 0; v < n; ++v) {
    int x = v, hops = 0;
    while (x != t.root) {
      if (x < 0 || x >= n || hops++ > n) return fail("parent pointers do not form a tree");
      x = t.parent[x];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (std::isnan(t.time[v])) return fail("unassigned time");
    if (v == t.root) continue;
    if (!(t.time[v] > t.time[t.parent[v]]))
      return fail("child " + std::to_string(v) + " not strictly later than its parent");
  }
  for (const auto& [v, tv] : tau) {
    if (v < 0 || v >= n) throw Error("is_feasible_consistent: observed node outside tree");
    if (t.time[v] != tv)
      return fail("observed node " + std::to_string(v) + " deviates from its timestamp");
  }
  return true;
}

std::vector<double> assign_line_times(double tau_first, double tau_last, int n) {
  if (n < 2) throw Error("assign_line_times: need n >= 2");
  if (!(tau_first < tau_last))
    throw Error("assign_line_times: first timestamp must precede the last");
  std::vector<double> t(n);
  double step = (tau_last - tau_first) / double(n - 1);
  for (int k = 0; k < n; ++k) t[k] = tau_first + double(k) * step;
  t[n - 1] = tau_last;
  return t;
}

double path_cost(int len, double t_m, double t_alpha, double mu) {
  if (len < 1) throw Error("path_cost: len must be >= 1");
  if (!(t_alpha > t_m)) return std::numeric_limits<double>::infinity();
  double gap = (t_alpha - t_m) / double(len) - mu;
  return double(len) * gap * gap;
}

void write_tree(const SpreadingTree& t, const std::vector<std::string>& labels,
                std::ostream& os) {
  for (int v = 0; v < t.node_count(); ++v) {
    os << labels[v] << ' '
       << (t.parent[v] < 0 ? std::string("-") : labels[t.parent[v]]) << ' '
       << format_double(t.time[v]) << '\n';
  }
}

SpreadingTree read_tree(const std::vector<std::string>& labels, std::istream& is) {
  std::unordered_map<std::string, int> id;
  for (int i = 0; i < int(labels.size()); ++i) id[labels[i]] = i;
  SpreadingTree t;
  t.parent.assign(labels.size(), -1);
  t.time.assign(labels.size(), std::numeric_limits<double>::quiet_NaN());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string node, parent, time;
    if (!(ss >> node >> parent >> time)) throw Error("read_tree: malformed line: " + line);
    auto it = id.find(node);
    if (it == id.end()) throw Error("read_tree: unknown node " + node);
    int v = it->second;
    if (parent == "-") {
      t.root = v;
      t.parent[v] = -1;
    } else {
      auto pit = id.find(parent);
      if (pit == id.end()) throw Error("read_tree: unknown parent " + parent);
      t.parent[v] = pit->second;
    }
    t.time[v] = std::stod(time);
  }
  if (t.root < 0) throw Error("read_tree: no root line");
  return t;
}

}  // namespace srcrank
