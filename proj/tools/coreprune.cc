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

// coreprune: visual-token pruning harness.
//
//   coreprune prune    --grid g.json --method evtp --ratio 0.2 --out sel.json
//   coreprune coverage --grid g.json --selection sel.json --eps 0.5,1
//   coreprune flops    --preset ReVOS --keep 36
//   coreprune sweep    --config sweep.json --out results/
//   coreprune synth    --kind gaussian_clusters --seed 42 --out g.json
//
// Exit codes: 0 success, 2 usage error, 3 input format error (or failed
// sweep rows), 4 internal invariant violation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coreprune/error.h"
#include "coreprune/flops.h"
#include "coreprune/io.h"
#include "coreprune/manifest.h"
#include "coreprune/metrics.h"
#include "coreprune/selectors.h"
#include "coreprune/sweep.h"
#include "coreprune/synth.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coreprune;

constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitInvariant = 4;

struct GlobalOptions {
  std::vector<double> eps;  // epsilon-ball radii
  std::string format = "json";
  std::string out;
  double norm_eps = kDefaultEpsilon;
};

// Writes to --out (plus a sibling manifest) or stdout.
void Emit(const GlobalOptions& g, const std::string& text,
          std::string_view command, const ordered_json& config,
          const std::vector<std::uint64_t>& seeds = {}) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  io::WriteText(g.out, text);
  io::WriteText(g.out + ".manifest.json",
                MakeManifest(command, config, seeds).dump(2) + "\n");
}

TokenGrid LoadGridOrExit(const std::string& path) {
  try {
    return io::LoadGrid(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kFormat, e.what());
  }
}

int RunPrune(const GlobalOptions& g, const std::string& grid_path,
             const std::string& method_name, double ratio, std::uint64_t seed,
             std::optional<std::size_t> k) {
  const auto method = ParseMethod(method_name);
  if (!method) {
    std::cerr << "unknown method '" << method_name
              << "'; known methods: " << KnownMethods() << "\n";
    return kExitUsage;
  }
  const TokenGrid grid = LoadGridOrExit(grid_path);
  PruneConfig cfg;
  cfg.ratio = ratio;
  cfg.seed = seed;
  cfg.epsilon = g.norm_eps;
  cfg.k_override = k;
  const Selection sel = Select(*method, grid, cfg);
  ordered_json config = {{"grid", grid_path},
                         {"method", method_name},
                         {"ratio", ratio},
                         {"seed", seed},
                         {"epsilon", g.norm_eps}};
  if (k) config["k"] = *k;
  Emit(g, io::SelectionToJson(sel).dump(2) + "\n", "prune", config, {seed});
  return 0;
}

int RunCoverage(const GlobalOptions& g, const std::string& grid_path,
                const std::string& sel_path, bool raw) {
  const TokenGrid grid = LoadGridOrExit(grid_path);
  Selection sel = io::ReadSelection(sel_path);
  const CoverageReport report =
      Coverage(grid, sel, g.eps,
               raw ? FeatureSpace::kRaw : FeatureSpace::kNormalized);
  std::string text;
  if (g.format == "csv") {
    text = io::CoverageCsvHeader(g.eps) + "\n" +
           io::CoverageCsvRow(sel, report) + "\n";
  } else {
    ordered_json j = io::CoverageToJson(report);
    j["method"] = MethodName(sel.method);
    j["k"] = sel.k;
    j["space"] = raw ? "raw" : "normalized";
    text = j.dump(2) + "\n";
  }
  Emit(g, text, "coverage",
       {{"grid", grid_path}, {"selection", sel_path}, {"eps", g.eps},
        {"raw", raw}},
       {sel.config.seed});
  return 0;
}

int RunFlops(const GlobalOptions& g, const std::vector<std::string>& presets,
             std::vector<std::uint64_t> keeps,
             const std::vector<std::string>& ratio_presets,
             const std::string& accounting, bool temporal_for_images,
             std::optional<std::uint64_t> t_eff) {
  flops::FlopsOptions opts;
  if (accounting == "all-frames") {
    opts.accounting = flops::FrameAccounting::kAllFrames;
  } else if (accounting != "per-frame") {
    std::cerr << "--frame-accounting must be per-frame or all-frames\n";
    return kExitUsage;
  }
  opts.temporal_for_images = temporal_for_images;
  opts.t_eff = t_eff;
  for (const auto& r : ratio_presets) keeps.push_back(flops::FindKeepPreset(r));
  if (keeps.empty()) {
    for (const auto& kp : flops::KeepPresets()) keeps.push_back(kp.keep);
  }
  std::vector<const flops::WorkloadPreset*> selected;
  if (presets.empty()) {
    for (const auto& p : flops::Presets()) selected.push_back(&p);
  } else {
    for (const auto& name : presets) selected.push_back(&flops::FindPreset(name));
  }

  const flops::ModelDims dims;
  ordered_json rows = ordered_json::array();
  std::string csv =
      "preset,keep,seq_len,lm,vision,prune,mask,temporal,vmtf,total,tflops,"
      "reduction_factor,published_tflops\n";
  for (const auto* p : selected) {
    for (std::uint64_t keep : keeps) {
      const flops::FlopsBreakdown b = flops::Total(*p, dims, keep, opts);
      const auto published = flops::PublishedTflops(p->name, keep);
      ordered_json row;
      row["preset"] = p->name;
      row["keep"] = keep;
      row["seq_len"] = b.seq_len;
      row["lm"] = b.lm;
      row["vision"] = b.vision;
      row["prune"] = b.prune;
      row["mask"] = b.mask;
      row["temporal"] = b.temporal;
      row["vmtf"] = b.vmtf;
      row["total"] = b.total;
      row["tflops"] = b.tflops;
      row["reduction_factor"] = b.reduction_factor;
      row["published_tflops"] = published ? ordered_json(*published) : ordered_json();
      rows.push_back(row);
      csv += std::string(p->name) + "," + std::to_string(keep) + "," +
             std::to_string(b.seq_len) + "," + io::FormatDouble(b.lm) + "," +
             io::FormatDouble(b.vision) + "," + io::FormatDouble(b.prune) +
             "," + io::FormatDouble(b.mask) + "," +
             io::FormatDouble(b.temporal) + "," + io::FormatDouble(b.vmtf) +
             "," + io::FormatDouble(b.total) + "," +
             io::FormatDouble(b.tflops) + "," +
             io::FormatDouble(b.reduction_factor) + "," +
             (published ? io::FormatDouble(*published) : "") + "\n";
    }
  }
  ordered_json config = {{"presets", presets},
                         {"keeps", keeps},
                         {"frame_accounting", accounting},
                         {"temporal_for_images", temporal_for_images}};
  if (t_eff) config["t_eff"] = *t_eff;
  Emit(g, g.format == "csv" ? csv : rows.dump(2) + "\n", "flops", config);
  return 0;
}

int RunSweep(const GlobalOptions& g, const std::string& config_path,
             const std::vector<std::string>& methods,
             const std::vector<double>& ratios,
             const std::vector<std::uint64_t>& seeds,
             const std::vector<std::string>& grids, const std::string& synth,
             bool svg) {
  sweep::SweepSpec spec;
  if (!config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(io::ReadText(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kFormat, std::string("sweep config: ") + e.what());
    }
    spec = sweep::SpecFromJson(j, fs::path(config_path).parent_path());
  } else {
    nlohmann::json j;
    j["methods"] = methods;
    j["ratios"] = ratios;
    j["seeds"] = seeds;
    j["inputs"] = nlohmann::json::array();
    for (const auto& p : grids) j["inputs"].push_back({{"file", p}});
    if (!synth.empty()) {
      j["inputs"].push_back({{"synth", {{"kind", synth}}}});
    }
    spec = sweep::SpecFromJson(j);
  }
  if (!g.eps.empty()) spec.epsilons = g.eps;
  spec.epsilon = g.norm_eps;
  sweep::Validate(spec);

  const std::vector<sweep::Row> rows = sweep::Run(spec);
  const auto summary = sweep::Summarize(spec, rows);
  const std::string csv = sweep::RowsToCsv(spec, rows);
  const ordered_json summary_json = sweep::SummaryToJson(summary, rows);

  if (g.out.empty()) {
    std::cout << (g.format == "csv" ? csv : summary_json.dump(2) + "\n");
  } else {
    const fs::path dir = g.out;
    fs::create_directories(dir);
    io::WriteText(dir / "results.csv", csv);
    io::WriteText(dir / "summary.json", summary_json.dump(2) + "\n");
    io::WriteText(dir / "manifest.json",
                  MakeManifest("sweep", sweep::SpecToJson(spec), spec.seeds)
                          .dump(2) +
                      "\n");
    if (svg) io::WriteText(dir / "radius_vs_ratio.svg",
                           sweep::RadiusChartSvg(summary));
  }
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::cerr << "row failed: " << r.input << " "
                << MethodName(r.method) << " ratio=" << r.ratio
                << " seed=" << r.seed << ": " << r.error << "\n";
      return kExitFormat;
    }
  }
  return 0;
}

int RunSynth(const GlobalOptions& g, SynthSpec spec, const std::string& kind,
             const std::string& dtype) {
  const auto parsed = ParseSynthKind(kind);
  if (!parsed) {
    std::cerr << "unknown synth kind '" << kind
              << "'; known: gaussian_clusters, constant, gradient, checker\n";
    return kExitUsage;
  }
  if (g.out.empty()) {
    std::cerr << "synth requires --out <header.json>\n";
    return kExitUsage;
  }
  spec.kind = *parsed;
  const TokenGrid grid = Generate(spec);
  io::WriteGrid(grid, g.out, dtype == "f32" ? io::Dtype::kF32 : io::Dtype::kF64);
  ordered_json config = {{"kind", kind},         {"W", spec.width},
                         {"H", spec.height},     {"F", spec.frames},
                         {"D", spec.dim},        {"n_clusters", spec.n_clusters},
                         {"cluster_std", spec.cluster_std},
                         {"value", spec.constant_value},
                         {"dtype", dtype}};
  io::WriteText(g.out + ".manifest.json",
                MakeManifest("synth", config, {spec.seed}).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coreprune: coverage-driven visual token pruning"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--eps", g.eps, "Epsilon-ball radii for coverage analysis")
      ->delimiter(',');
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Output file (or directory for sweep)");
  app.add_option("--norm-eps", g.norm_eps,
                 "Stability constant added to the feature variance")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  // prune
  auto* prune = app.add_subcommand("prune", "Select tokens from a grid");
  std::string grid_path, method = "evtp";
  double ratio = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k;
  prune->add_option("--grid", grid_path, "Grid header (.json) or .csv")
      ->required();
  prune->add_option("--method", method,
                    "random | kcenter | evtp | divmax | oracle");
  prune->add_option("--ratio", ratio, "Fraction of tokens kept, in (0, 1]");
  prune->add_option("--seed", seed, "Seed for the random selector");
  prune->add_option("--k", k, "Exact k, overriding floor(ratio * M)");

  // coverage
  auto* coverage = app.add_subcommand("coverage", "Coverage radii of a selection");
  std::string sel_path;
  bool raw = false;
  coverage->add_option("--grid", grid_path)->required();
  coverage->add_option("--selection", sel_path)->required();
  coverage->add_flag("--raw", raw, "Measure R_f on raw features");

  // flops
  auto* flops_cmd = app.add_subcommand("flops", "Pipeline FLOPs table");
  std::vector<std::string> presets, ratio_presets;
  std::vector<std::uint64_t> keeps;
  std::string accounting = "per-frame";
  bool temporal_images = false;
  std::optional<std::uint64_t> t_eff;
  flops_cmd->add_option("--preset", presets, "Workload preset(s); default all")
      ->delimiter(',');
  flops_cmd->add_option("--keep", keeps, "Visual tokens kept per frame")
      ->delimiter(',');
  flops_cmd->add_option("--ratio-preset", ratio_presets,
                        "100% | 20% | 10% | 5%")
      ->delimiter(',');
  flops_cmd->add_option("--frame-accounting", accounting,
                        "per-frame | all-frames");
  flops_cmd->add_flag("--temporal-for-images", temporal_images);
  flops_cmd->add_option("--t-eff", t_eff, "Fusion text length override");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Coverage-vs-ratio sweep");
  std::string config_path, synth_kind;
  std::vector<std::string> methods, grids;
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  bool svg = false;
  sweep_cmd->add_option("--config", config_path, "Sweep config JSON");
  sweep_cmd->add_option("--methods", methods)->delimiter(',');
  sweep_cmd->add_option("--ratios", ratios)->delimiter(',');
  sweep_cmd->add_option("--seeds", seeds)->delimiter(',');
  sweep_cmd->add_option("--grid", grids, "Grid file input(s)")->delimiter(',');
  sweep_cmd->add_option("--synth", synth_kind, "Add a default synthetic input");
  sweep_cmd->add_flag("--svg", svg, "Also write an R_f vs ratio chart");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic grid");
  SynthSpec synth;
  std::string kind = "gaussian_clusters", dtype = "f64";
  synth_cmd->add_option("--kind", kind);
  synth_cmd->add_option("--W", synth.width);
  synth_cmd->add_option("--H", synth.height);
  synth_cmd->add_option("--F", synth.frames);
  synth_cmd->add_option("--D", synth.dim);
  synth_cmd->add_option("--clusters", synth.n_clusters);
  synth_cmd->add_option("--std", synth.cluster_std);
  synth_cmd->add_option("--value", synth.constant_value);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--dtype", dtype)->check(CLI::IsMember({"f32", "f64"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*prune) return RunPrune(g, grid_path, method, ratio, seed, k);
    if (*coverage) return RunCoverage(g, grid_path, sel_path, raw);
    if (*flops_cmd) {
      return RunFlops(g, presets, keeps, ratio_presets, accounting,
                      temporal_images, t_eff);
    }
    if (*sweep_cmd) {
      return RunSweep(g, config_path, methods, ratios, seeds, grids,
                      synth_kind, svg);
    }
    if (*synth_cmd) return RunSynth(g, synth, kind, dtype);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kFormat:
        return kExitFormat;
      case ErrorKind::kInvariant:
        return kExitInvariant;
      case ErrorKind::kInvalidArgument:
      case ErrorKind::kLimit:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
