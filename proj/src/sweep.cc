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

#include "coreprune/sweep.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "coreprune/error.h"
#include "coreprune/io.h"
#include "coreprune/parallel.h"

namespace coreprune::sweep {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

SynthSpec SynthFromJson(const json& j) {
  SynthSpec s;
  const std::string kind = j.value("kind", "gaussian_clusters");
  const auto parsed = ParseSynthKind(kind);
  if (!parsed) {
    Fail(ErrorKind::kInvalidArgument, "unknown synth kind '" + kind + "'");
  }
  s.kind = *parsed;
  s.width = j.value("W", s.width);
  s.height = j.value("H", s.height);
  s.frames = j.value("F", s.frames);
  s.dim = j.value("D", s.dim);
  s.n_clusters = j.value("n_clusters", s.n_clusters);
  s.cluster_std = j.value("cluster_std", s.cluster_std);
  s.constant_value = j.value("value", s.constant_value);
  return s;
}

ordered_json SynthToJson(const SynthSpec& s) {
  ordered_json j;
  j["kind"] = SynthKindName(s.kind);
  j["W"] = s.width;
  j["H"] = s.height;
  j["F"] = s.frames;
  j["D"] = s.dim;
  j["n_clusters"] = s.n_clusters;
  j["cluster_std"] = s.cluster_std;
  j["value"] = s.constant_value;
  return j;
}

std::string SynthLabel(const SynthSpec& s) {
  std::ostringstream ss;
  ss << SynthKindName(s.kind) << "_" << s.width << "x" << s.height << "x"
     << s.frames << "_d" << s.dim;
  return ss.str();
}

}  // namespace

void Validate(const SweepSpec& spec) {
  if (spec.methods.empty()) {
    Fail(ErrorKind::kInvalidArgument, "sweep needs at least one method");
  }
  if (spec.ratios.empty()) {
    Fail(ErrorKind::kInvalidArgument, "sweep needs at least one ratio");
  }
  if (spec.seeds.empty()) {
    Fail(ErrorKind::kInvalidArgument, "sweep needs at least one seed");
  }
  if (spec.inputs.empty()) {
    Fail(ErrorKind::kInvalidArgument, "sweep needs at least one input");
  }
  for (double r : spec.ratios) {
    if (!(r > 0.0 && r <= 1.0)) {
      Fail(ErrorKind::kInvalidArgument, "sweep ratios must lie in (0, 1]");
    }
  }
  for (double e : spec.epsilons) {
    if (!(e >= 0.0)) {
      Fail(ErrorKind::kInvalidArgument, "epsilon-ball radii must be >= 0");
    }
  }
  for (const Input& in : spec.inputs) {
    if (in.file.has_value() == in.synth.has_value()) {
      Fail(ErrorKind::kInvalidArgument,
           "each input needs exactly one of file or synth");
    }
    if (in.file && !std::filesystem::exists(*in.file)) {
      Fail(ErrorKind::kInvalidArgument,
           "input file not found: " + in.file->string());
    }
  }
}

SweepSpec SpecFromJson(const json& j, const std::filesystem::path& base_dir) {
  SweepSpec spec;
  try {
    for (const auto& name : j.at("methods")) {
      const auto m = ParseMethod(name.get<std::string>());
      if (!m) {
        Fail(ErrorKind::kInvalidArgument,
             "unknown method '" + name.get<std::string>() +
                 "'; known methods: " + KnownMethods());
      }
      spec.methods.push_back(*m);
    }
    spec.ratios = j.at("ratios").get<std::vector<double>>();
    spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    spec.epsilons = j.value("epsilons", std::vector<double>{});
    spec.epsilon = j.value("epsilon", kDefaultEpsilon);
    spec.space = j.value("space", "normalized") == "raw"
                     ? FeatureSpace::kRaw
                     : FeatureSpace::kNormalized;
    for (const auto& in : j.at("inputs")) {
      Input input;
      if (in.contains("file")) {
        std::filesystem::path p = in["file"].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        input.file = p;
        input.label = in.value("label", p.filename().string());
      } else if (in.contains("synth")) {
        input.synth = SynthFromJson(in["synth"]);
        input.label = in.value("label", SynthLabel(*input.synth));
      }
      spec.inputs.push_back(std::move(input));
    }
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidArgument, std::string("sweep config: ") + e.what());
  }
  return spec;
}

ordered_json SpecToJson(const SweepSpec& spec) {
  ordered_json j;
  j["methods"] = ordered_json::array();
  for (Method m : spec.methods) j["methods"].push_back(MethodName(m));
  j["ratios"] = spec.ratios;
  j["seeds"] = spec.seeds;
  j["epsilons"] = spec.epsilons;
  j["epsilon"] = spec.epsilon;
  j["space"] = spec.space == FeatureSpace::kRaw ? "raw" : "normalized";
  j["inputs"] = ordered_json::array();
  for (const Input& in : spec.inputs) {
    ordered_json e;
    e["label"] = in.label;
    if (in.file) e["file"] = in.file->string();
    if (in.synth) e["synth"] = SynthToJson(*in.synth);
    j["inputs"].push_back(std::move(e));
  }
  return j;
}

std::vector<Row> Run(const SweepSpec& spec) {
  Validate(spec);
  const std::size_t n_seeds = spec.seeds.size();

  // Grids per (input, seed); file inputs ignore the seed but are cached the
  // same way to keep indexing uniform.
  struct Slot {
    std::optional<TokenGrid> grid;
    std::string error;
  };
  std::vector<Slot> grids(spec.inputs.size() * n_seeds);
  ParallelFor(
      grids.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t g = begin; g < end; ++g) {
          const Input& in = spec.inputs[g / n_seeds];
          try {
            if (in.file) {
              grids[g].grid = io::LoadGrid(*in.file);
            } else {
              SynthSpec s = *in.synth;
              s.seed = spec.seeds[g % n_seeds];
              grids[g].grid = Generate(s);
            }
          } catch (const std::exception& e) {
            grids[g].error = e.what();
          }
        }
      },
      1);

  const std::size_t per_input =
      spec.methods.size() * spec.ratios.size() * n_seeds;
  std::vector<Row> rows(spec.inputs.size() * per_input);
  ParallelFor(
      rows.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          std::size_t rest = r;
          const std::size_t s = rest % n_seeds;
          rest /= n_seeds;
          const std::size_t ri = rest % spec.ratios.size();
          rest /= spec.ratios.size();
          const std::size_t mi = rest % spec.methods.size();
          const std::size_t ii = rest / spec.methods.size();

          Row& row = rows[r];
          row.input = spec.inputs[ii].label;
          row.method = spec.methods[mi];
          row.ratio = spec.ratios[ri];
          row.seed = spec.seeds[s];
          const Slot& slot = grids[ii * n_seeds + s];
          if (!slot.grid) {
            row.error = slot.error;
            continue;
          }
          try {
            PruneConfig cfg;
            cfg.ratio = row.ratio;
            cfg.seed = row.seed;
            cfg.epsilon = spec.epsilon;
            const Selection sel = Select(row.method, *slot.grid, cfg);
            row.k = sel.k;
            row.report = Coverage(*slot.grid, sel, spec.epsilons, spec.space);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
        }
      },
      1);
  return rows;
}

std::string RowsToCsv(const SweepSpec& spec, const std::vector<Row>& rows) {
  std::string out = "input,method,ratio,seed,k,R_f,R_j,R_s";
  for (double e : spec.epsilons) out += ",eps=" + io::FormatDouble(e);
  out += ",error\n";
  for (const Row& row : rows) {
    out += row.input + "," + std::string(MethodName(row.method)) + "," +
           io::FormatDouble(row.ratio) + "," + std::to_string(row.seed) +
           "," + std::to_string(row.k);
    if (row.report) {
      out += "," + io::FormatDouble(row.report->feature_radius) + "," +
             io::FormatDouble(row.report->joint_radius) + "," +
             io::FormatDouble(row.report->spatial_radius);
      for (const auto& b : row.report->epsilon_ball_fractions) {
        out += "," + io::FormatDouble(b.covered_fraction);
      }
    } else {
      out += ",,,";
      for (std::size_t i = 0; i < spec.epsilons.size(); ++i) out += ",";
    }
    // Errors are free text; keep the CSV one line per row.
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += "," + err + "\n";
  }
  return out;
}

std::vector<RatioSummary> Summarize(const SweepSpec& spec,
                                    const std::vector<Row>& rows) {
  std::vector<RatioSummary> out;
  for (double ratio : spec.ratios) {
    RatioSummary rs{ratio, {}, {}};
    for (Method m : spec.methods) {
      MethodMean mean{m, 0.0, 0.0, 0.0, 0};
      for (const Row& row : rows) {
        if (row.method != m || row.ratio != ratio || !row.report) continue;
        mean.feature_radius += row.report->feature_radius;
        mean.joint_radius += row.report->joint_radius;
        mean.spatial_radius += row.report->spatial_radius;
        ++mean.count;
      }
      if (mean.count > 0) {
        const auto n = static_cast<double>(mean.count);
        mean.feature_radius /= n;
        mean.joint_radius /= n;
        mean.spatial_radius /= n;
      }
      rs.means.push_back(mean);
    }
    std::vector<MethodMean> sorted = rs.means;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const MethodMean& a, const MethodMean& b) {
                       return a.feature_radius < b.feature_radius;
                     });
    for (const auto& m : sorted) {
      if (m.count > 0) rs.ordering.push_back(m.method);
    }
    out.push_back(std::move(rs));
  }
  return out;
}

ordered_json SummaryToJson(const std::vector<RatioSummary>& summary,
                           const std::vector<Row>& rows) {
  ordered_json j;
  std::size_t failed = 0;
  for (const Row& r : rows) failed += r.error.empty() ? 0 : 1;
  j["rows"] = rows.size();
  j["failed_rows"] = failed;
  j["ratios"] = ordered_json::array();
  for (const RatioSummary& rs : summary) {
    ordered_json e;
    e["ratio"] = rs.ratio;
    ordered_json means = ordered_json::object();
    for (const MethodMean& m : rs.means) {
      means[std::string(MethodName(m.method))] = {
          {"mean_R_f", m.feature_radius},
          {"mean_R_j", m.joint_radius},
          {"mean_R_s", m.spatial_radius},
          {"count", m.count}};
    }
    e["means"] = std::move(means);
    e["ordering_by_R_f"] = ordered_json::array();
    for (Method m : rs.ordering) e["ordering_by_R_f"].push_back(MethodName(m));
    j["ratios"].push_back(std::move(e));
  }
  return j;
}

std::string RadiusChartSvg(const std::vector<RatioSummary>& summary) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e"};
  double x_min = 1.0, x_max = 0.0, y_max = 0.0;
  for (const auto& rs : summary) {
    x_min = std::min(x_min, rs.ratio);
    x_max = std::max(x_max, rs.ratio);
    for (const auto& m : rs.means) y_max = std::max(y_max, m.feature_radius);
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  const auto px = [&](double x) {
    return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - y / y_max * (kHeight - 2 * kMargin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  svg << "<path d=\"M" << kMargin << " " << kMargin << " L" << kMargin << " "
      << kHeight - kMargin << " L" << kWidth - kMargin << " "
      << kHeight - kMargin << "\" stroke=\"black\" fill=\"none\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">ratio</text>\n";
  svg << "<text x=\"12\" y=\"" << kHeight / 2
      << "\" transform=\"rotate(-90 12 " << kHeight / 2
      << ")\" text-anchor=\"middle\">mean R_f</text>\n";
  if (!summary.empty()) {
    for (std::size_t mi = 0; mi < summary.front().means.size(); ++mi) {
      const char* color = kColors[mi % std::size(kColors)];
      svg << "<path d=\"";
      for (std::size_t ri = 0; ri < summary.size(); ++ri) {
        const auto& m = summary[ri].means[mi];
        svg << (ri == 0 ? "M" : " L") << io::FormatDouble(px(summary[ri].ratio))
            << " " << io::FormatDouble(py(m.feature_radius));
      }
      svg << "\" stroke=\"" << color << "\" fill=\"none\"/>\n";
      svg << "<text x=\"" << kWidth - kMargin + 5 << "\" y=\""
          << kMargin + 16 * mi << "\" fill=\"" << color << "\">"
          << MethodName(summary.front().means[mi].method) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace coreprune::sweep
