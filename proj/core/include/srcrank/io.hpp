#pragma once

#include <map>
#include <string>

#include "srcrank/diffusion.hpp"
#include "srcrank/graph.hpp"

namespace srcrank {

// Observation files: one line per infected node, "label [time]", time
// omitted for unobserved nodes. Timestamps round-trip exactly.
Observation read_observation_file(const Graph& g, const std::string& path);
void write_observation_file(const Graph& g, const Observation& obs, const std::string& path);

// Ground-truth files: "source <label>" then one "label time" line per
// infected node.
ContagionResult read_truth_file(const Graph& g, const std::string& path);
void write_truth_file(const Graph& g, const ContagionResult& r, const std::string& path);

// Exact decimal rendering of a double (shortest round-trip form).
std::string format_double(double x);

}  // namespace srcrank
