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

#include "coreprune/flops.h"

#include <array>
#include <string>

#include "coreprune/error.h"

namespace coreprune::flops {

namespace {

using Wide = unsigned __int128;

constexpr std::array kPresets = {
    WorkloadPreset{"RefCOCO", 15, 729, 1},
    WorkloadPreset{"RefCOCO+", 15, 729, 1},
    WorkloadPreset{"RefCOCOg", 23, 729, 1},
    WorkloadPreset{"MM-Conv", 50, 729, 1},
    WorkloadPreset{"ReasonSeg", 80, 729, 1},
    WorkloadPreset{"RefYouTube", 20, 729, 4},
    WorkloadPreset{"RefDAVIS", 18, 729, 4},
    WorkloadPreset{"ReVOS", 25, 729, 4},
};

constexpr std::array kKeepPresets = {
    KeepPreset{"100%", 729},
    KeepPreset{"20%", 146},
    KeepPreset{"10%", 73},
    KeepPreset{"5%", 36},
};

struct Reference {
  std::uint64_t keep;
  double image;
  double video;
};

constexpr std::array kReferences = {
    Reference{729, 2.376, 9.609},
    Reference{146, 0.724, 1.989},
    Reference{73, 0.525, 1.161},
    Reference{36, 0.447, 0.751},
};

double ToDouble(Wide v) { return static_cast<double>(v); }

}  // namespace

std::span<const WorkloadPreset> Presets() { return kPresets; }

const WorkloadPreset& FindPreset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : kPresets) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown preset '" + std::string(name) +
                                        "'; known presets: " + known);
}

std::span<const KeepPreset> KeepPresets() { return kKeepPresets; }

std::uint64_t FindKeepPreset(std::string_view name) {
  for (const auto& p : kKeepPresets) {
    if (p.name == name) return p.keep;
  }
  Fail(ErrorKind::kInvalidArgument,
       "unknown ratio preset '" + std::string(name) +
           "'; known: 100%, 20%, 10%, 5%");
}

std::optional<double> PublishedTflops(std::string_view preset,
                                           std::uint64_t keep) {
  const bool image = preset == "RefCOCO" || preset == "RefCOCO+" ||
                     preset == "RefCOCOg" || preset == "ReasonSeg";
  const bool video = preset == "ReVOS";
  if (!image && !video) return std::nullopt;
  for (const auto& r : kReferences) {
    if (r.keep == keep) return image ? r.image : r.video;
  }
  return std::nullopt;
}

std::uint64_t SequenceLength(const WorkloadPreset& preset,
                             const ModelDims& dims, std::uint64_t v_prime) {
  if (v_prime == 0) {
    Fail(ErrorKind::kInvalidArgument, "visual token count must be positive");
  }
  if (v_prime > preset.visual_tokens * preset.frames) {
    Fail(ErrorKind::kInvalidArgument,
         "visual token count " + std::to_string(v_prime) + " exceeds V*F = " +
             std::to_string(preset.visual_tokens * preset.frames));
  }
  return preset.text_tokens + dims.t_fixed + v_prime;
}

double LanguageModel(std::uint64_t seq_len, const ModelDims& dims) {
  const Wide s = seq_len, d = dims.d;
  const Wide attn = 3 * s * d * d + 2 * s * s * d + s * d * d;
  const Wide ffn = 2 * s * d * dims.d_int;
  return ToDouble(dims.layers * (attn + ffn) + s * d * dims.vocab);
}

double Vision(const ModelDims& dims) {
  const Wide n = dims.patches, dv = dims.d_v;
  return ToDouble(dims.layers_v * (6 * n * dv * dv + 2 * n * n * dv) +
                  n * dv * dims.d);
}

double Prune(std::uint64_t v, std::uint64_t v_prime, const ModelDims& dims) {
  const Wide a = v, b = v_prime, d = dims.d;
  // Scaled by 10 so the only rounding is the final division.
  return ToDouble(20 * a * d + a * b * d + 10 * b * d) / 10.0;
}

double Mask(std::uint64_t v_prime, const ModelDims& dims) {
  const Wide q = dims.queries, dm = dims.d_m, v = v_prime;
  return ToDouble(dims.layers_d *
                      (12 * q * dm * dm + 2 * q * q * dm + 2 * q * v * dm) +
                  q * dm * v);
}

double Temporal(std::uint64_t frames, const ModelDims& dims) {
  const Wide qt = dims.queries_t, d = dims.d;
  return ToDouble(dims.layers_t * (qt * frames * d * d + 4 * qt * d * d));
}

double Vmtf(std::uint64_t t_eff, std::uint64_t v_prime,
            const ModelDims& dims) {
  const Wide t = t_eff, v = v_prime, df = dims.d_f;
  return ToDouble(dims.layers_f *
                  (t * dims.d * df + v * dims.d_v * df + 2 * t * v * df));
}

namespace {

FlopsBreakdown Compose(const WorkloadPreset& preset, const ModelDims& dims,
                       std::uint64_t keep, const FlopsOptions& options) {
  if (keep == 0 || keep > preset.visual_tokens) {
    Fail(ErrorKind::kInvalidArgument,
         "keep must lie in [1, " + std::to_string(preset.visual_tokens) +
             "], got " + std::to_string(keep));
  }
  const bool all_frames = options.accounting == FrameAccounting::kAllFrames;
  const std::uint64_t f = preset.frames;
  const std::uint64_t frame_keep = all_frames ? keep * f : keep;
  const std::uint64_t frame_v =
      all_frames ? preset.visual_tokens * f : preset.visual_tokens;
  const std::uint64_t t_eff =
      options.t_eff.value_or(preset.text_tokens + dims.t_fixed);

  FlopsBreakdown out;
  out.seq_len = SequenceLength(preset, dims, keep * f);
  out.lm = LanguageModel(out.seq_len, dims);
  out.vision = Vision(dims);
  out.prune = Prune(frame_v, frame_keep, dims);
  out.mask = Mask(frame_keep, dims);
  out.temporal =
      (f > 1 || options.temporal_for_images) ? Temporal(f, dims) : 0.0;
  out.vmtf = Vmtf(t_eff, frame_keep, dims);
  out.total =
      out.lm + out.vision + out.prune + out.mask + out.temporal + out.vmtf;
  out.tflops = out.total * 1e-12;
  return out;
}

}  // namespace

FlopsBreakdown Total(const WorkloadPreset& preset, const ModelDims& dims,
                     std::uint64_t keep_per_frame,
                     const FlopsOptions& options) {
  FlopsBreakdown out = Compose(preset, dims, keep_per_frame, options);
  const FlopsBreakdown full =
      Compose(preset, dims, preset.visual_tokens, options);
  out.reduction_factor = full.total / out.total;
  return out;
}

double TflopsMainText(double shared_flops, std::uint64_t layers,
                      std::uint64_t d, std::uint64_t ffn, std::uint64_t mu) {
  const Wide m = mu, h = d;
  const Wide per_layer = 4 * m * h * h + 2 * m * m * h + 2 * m * h * ffn;
  return (shared_flops + ToDouble(layers * per_layer)) / 1e12;
}

}  // namespace coreprune::flops
