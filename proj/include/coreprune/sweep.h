// Copyright 2026 The coreprune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COREPRUNE_SWEEP_H_
#define COREPRUNE_SWEEP_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coreprune/metrics.h"
#include "coreprune/selectors.h"
#include "coreprune/synth.h"

namespace coreprune::sweep {

// One sweep input: a grid file, or a synthetic generator whose seed is
// taken from the sweep's seed list.
struct Input {
  std::string label;
  std::optional<std::filesystem::path> file;
  std::optional<SynthSpec> synth;
};

struct SweepSpec {
  std::vector<Method> methods;
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  std::vector<Input> inputs;
  std::vector<double> epsilons;
  double epsilon = kDefaultEpsilon;  // normalization constant
  FeatureSpace space = FeatureSpace::kNormalized;
};

// Throws Error(kInvalidArgument) on an empty list, a ratio outside (0, 1],
// a negative epsilon-ball radius, or a missing input file.
void Validate(const SweepSpec& spec);

// Config file schema:
//   {"methods": ["random", "kcenter", "evtp"], "ratios": [0.05, 0.1],
//    "seeds": [0, 1], "epsilons": [0.5, 1.0], "epsilon": 1e-6,
//    "space": "normalized" | "raw",
//    "inputs": [{"file": "grid.json"},
//               {"synth": {"kind": "gaussian_clusters", "W": 14, "H": 14,
//                          "F": 1, "D": 16, "n_clusters": 4,
//                          "cluster_std": 0.1}}]}
// Relative file paths resolve against `base_dir`.
SweepSpec SpecFromJson(const nlohmann::json& j,
                       const std::filesystem::path& base_dir = {});
nlohmann::ordered_json SpecToJson(const SweepSpec& spec);

struct Row {
  std::string input;
  Method method = Method::kEvtp;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::optional<CoverageReport> report;
  std::string error;  // empty on success
};

// Rows ordered by (input, method, ratio, seed) in spec order, independent of
// how cells were scheduled across threads.
std::vector<Row> Run(const SweepSpec& spec);

std::string RowsToCsv(const SweepSpec& spec, const std::vector<Row>& rows);

struct MethodMean {
  Method method;
  double feature_radius;
  double joint_radius;
  double spatial_radius;
  std::size_t count;
};

struct RatioSummary {
  double ratio;
  std::vector<MethodMean> means;  // spec method order
  std::vector<Method> ordering;   // ascending mean R_f
};

std::vector<RatioSummary> Summarize(const SweepSpec& spec,
                                    const std::vector<Row>& rows);
nlohmann::ordered_json SummaryToJson(const std::vector<RatioSummary>& summary,
                                     const std::vector<Row>& rows);

// Line chart of mean R_f against ratio, one polyline per method.
std::string RadiusChartSvg(const std::vector<RatioSummary>& summary);

}  // namespace coreprune::sweep

#endif  // COREPRUNE_SWEEP_H_
