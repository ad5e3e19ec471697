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

#ifndef COREPRUNE_FLOPS_H_
#define COREPRUNE_FLOPS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace coreprune::flops {

// Architecture sizes of the segmentation MLLM pipeline. Defaults are the
// reference configuration (Phi-2 language model, SigLIP vision tower,
// Mask2Former-style decoder).
struct ModelDims {
  std::uint64_t d = 2560;         // LM hidden size
  std::uint64_t d_int = 10240;    // LM FFN size
  std::uint64_t layers = 32;      // LM layers
  std::uint64_t vocab = 51200;    // vocabulary size
  std::uint64_t d_v = 1152;       // vision hidden size
  std::uint64_t patches = 729;    // vision patches N
  std::uint64_t layers_v = 27;    // vision layers
  std::uint64_t queries = 100;    // mask decoder queries Q
  std::uint64_t d_m = 256;        // mask decoder hidden size
  std::uint64_t layers_d = 9;     // mask decoder layers
  std::uint64_t queries_t = 128;  // temporal queries
  std::uint64_t layers_t = 3;     // temporal layers
  std::uint64_t d_f = 1024;       // fusion hidden size
  std::uint64_t layers_f = 3;     // fusion layers
  std::uint64_t t_fixed = 100;    // fixed auxiliary tokens
};

struct WorkloadPreset {
  std::string_view name;
  std::uint64_t text_tokens;
  std::uint64_t visual_tokens;  // per frame
  std::uint64_t frames;
};

std::span<const WorkloadPreset> Presets();

// Throws kInvalidArgument listing the known presets.
const WorkloadPreset& FindPreset(std::string_view name);

// Named per-frame keep counts: "100%" -> 729, "20%" -> 146, "10%" -> 73,
// "5%" -> 36.
struct KeepPreset {
  std::string_view name;
  std::uint64_t keep;
};
std::span<const KeepPreset> KeepPresets();
std::uint64_t FindKeepPreset(std::string_view name);

// Published end-to-end TFLOPs for a (preset, keep) pair when available.
// Image benchmarks share one column; ReVOS has its own.
std::optional<double> PublishedTflops(std::string_view preset,
                                           std::uint64_t keep);

// Component formulas. Each is evaluated in exact integer arithmetic and
// rounded to double once, so results are exact while they stay below 2^53.

// S = T_text + T_fixed + v_prime, with v_prime already multiplied by F for
// video. Throws when v_prime is zero or exceeds V * F.
std::uint64_t SequenceLength(const WorkloadPreset& preset,
                             const ModelDims& dims, std::uint64_t v_prime);

// L * (4 S d^2 + 2 S^2 d + 2 S d d_int) + S d |vocab|
double LanguageModel(std::uint64_t seq_len, const ModelDims& dims);
// L_v * (6 N d_v^2 + 2 N^2 d_v) + N d_v d
double Vision(const ModelDims& dims);
// 2 V d + V V' d / 10 + V' d
double Prune(std::uint64_t v, std::uint64_t v_prime, const ModelDims& dims);
// L_d * (12 Q d_m^2 + 2 Q^2 d_m + 2 Q V' d_m) + Q d_m V'
double Mask(std::uint64_t v_prime, const ModelDims& dims);
// L_t * (Q_t F d^2 + 4 Q_t d^2)
double Temporal(std::uint64_t frames, const ModelDims& dims);
// L_f * (T_eff d d_f + V' d_v d_f + 2 T_eff V' d_f)
double Vmtf(std::uint64_t t_eff, std::uint64_t v_prime,
            const ModelDims& dims);

enum class FrameAccounting {
  kPerFrame,   // mask decoder, pruning and fusion see one frame's tokens
  kAllFrames,  // they see V' * F tokens
};

struct FlopsOptions {
  FrameAccounting accounting = FrameAccounting::kPerFrame;
  // The temporal module only runs on video (F > 1) unless this is set.
  bool temporal_for_images = false;
  // Fusion text length; defaults to T_text + T_fixed.
  std::optional<std::uint64_t> t_eff;
};

struct FlopsBreakdown {
  double lm = 0.0;
  double vision = 0.0;
  double prune = 0.0;
  double mask = 0.0;
  double temporal = 0.0;
  double vmtf = 0.0;
  double total = 0.0;
  double tflops = 0.0;
  // Unpruned total divided by this total.
  double reduction_factor = 1.0;
  std::uint64_t seq_len = 0;
};

FlopsBreakdown Total(const WorkloadPreset& preset, const ModelDims& dims,
                     std::uint64_t keep_per_frame,
                     const FlopsOptions& options = {});

// Single-expression estimate (S_shared + N (4 mu d^2 + 2 mu^2 d +
// 2 mu d D)) / 1e12 with mu = T_text + M + L, as used in the pruning
// literature.
double TflopsMainText(double shared_flops, std::uint64_t layers,
                      std::uint64_t d, std::uint64_t ffn, std::uint64_t mu);

}  // namespace coreprune::flops

#endif  // COREPRUNE_FLOPS_H_
