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

#ifndef COREPRUNE_IO_H_
#define COREPRUNE_IO_H_

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "coreprune/core.h"
#include "coreprune/metrics.h"
#include "coreprune/selectors.h"

namespace coreprune::io {

enum class Dtype { kF32, kF64 };

// Token grid on disk: a JSON header
//   {"M":..,"D":..,"W":..,"H":..,"F":..,"dtype":"f32"|"f64",
//    "layout":"row-major","payload":"<file>"}
// next to a raw little-endian payload of M*D values. "payload" is optional
// and defaults to the header path with its extension replaced by ".bin".
// Malformed input throws Error(kFormat).
TokenGrid ReadGrid(const std::filesystem::path& header_path);
void WriteGrid(const TokenGrid& grid, const std::filesystem::path& header_path,
               Dtype dtype = Dtype::kF64);

// Small hand-made fixtures: header "x,y,frame,f0,...,f{D-1}" where x is the
// 0-based column, y the 0-based row and frame the 0-based frame. Rows may
// come in any order but must cover every (x, y, frame) cell exactly once.
TokenGrid ReadGridCsv(const std::filesystem::path& path);

// Dispatches on extension: ".csv" goes to ReadGridCsv, anything else to
// ReadGrid.
TokenGrid LoadGrid(const std::filesystem::path& path);

nlohmann::ordered_json SelectionToJson(const Selection& sel);
Selection SelectionFromJson(const nlohmann::json& j);
Selection ReadSelection(const std::filesystem::path& path);

nlohmann::ordered_json CoverageToJson(const CoverageReport& report);

// method,ratio,seed,R_f,R_j,R_s,eps=<e1>,...
std::string CoverageCsvHeader(std::span<const double> epsilons);
std::string CoverageCsvRow(const Selection& sel, const CoverageReport& report);

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double value);

// Writes text atomically enough for a CLI: truncate and write.
void WriteText(const std::filesystem::path& path, const std::string& text);
std::string ReadText(const std::filesystem::path& path);

}  // namespace coreprune::io

#endif  // COREPRUNE_IO_H_
