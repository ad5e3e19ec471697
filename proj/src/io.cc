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

#include "coreprune/io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "coreprune/error.h"

namespace coreprune::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "payload I/O assumes a little-endian host");

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t HeaderSize(const json& header, const char* key) {
  if (!header.contains(key) || !header[key].is_number_unsigned()) {
    Fail(ErrorKind::kFormat,
         std::string("grid header field '") + key +
             "' missing or not a non-negative integer");
  }
  return header[key].get<std::size_t>();
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    std::size_t start = 0;
    while (start < cell.size() && cell[start] == ' ') ++start;
    out.push_back(cell.substr(start));
  }
  return out;
}

double ParseDouble(const std::string& s, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(ErrorKind::kFormat, "line " + std::to_string(line_no) +
                                 ": cannot parse number '" + s + "'");
  }
  return value;
}

std::size_t ParseIndex(const std::string& s, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(ErrorKind::kFormat, "line " + std::to_string(line_no) +
                                 ": cannot parse index '" + s + "'");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kFormat, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    Fail(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  }
  out << text;
}

TokenGrid ReadGrid(const std::filesystem::path& header_path) {
  json header;
  try {
    header = json::parse(ReadText(header_path));
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat,
         "grid header " + header_path.string() + ": " + e.what());
  }
  if (!header.is_object()) {
    Fail(ErrorKind::kFormat, "grid header must be a JSON object");
  }
  const std::size_t m = HeaderSize(header, "M");
  const std::size_t d = HeaderSize(header, "D");
  const std::size_t w = HeaderSize(header, "W");
  const std::size_t h = HeaderSize(header, "H");
  const std::size_t f = HeaderSize(header, "F");
  const std::string dtype = header.value("dtype", "");
  const std::string layout = header.value("layout", "row-major");
  if (dtype != "f32" && dtype != "f64") {
    Fail(ErrorKind::kFormat, "grid dtype must be \"f32\" or \"f64\"");
  }
  if (layout != "row-major") {
    Fail(ErrorKind::kFormat, "only row-major layout is supported");
  }
  if (m != w * h * f || m == 0 || d == 0) {
    Fail(ErrorKind::kFormat, "grid header requires M = F*W*H > 0 and D > 0");
  }

  std::filesystem::path payload = header_path;
  payload.replace_extension(".bin");
  if (header.contains("payload")) {
    payload = header_path.parent_path() /
              header["payload"].get<std::string>();
  }
  const std::string bytes = ReadText(payload);
  const std::size_t width = dtype == "f32" ? 4 : 8;
  if (bytes.size() != m * d * width) {
    Fail(ErrorKind::kFormat,
         "payload " + payload.string() + " has " +
             std::to_string(bytes.size()) + " bytes, expected " +
             std::to_string(m * d * width));
  }
  std::vector<double> values(m * d);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (width == 4) {
      float v;
      std::memcpy(&v, bytes.data() + i * 4, 4);
      values[i] = v;
    } else {
      std::memcpy(&values[i], bytes.data() + i * 8, 8);
    }
  }
  try {
    return TokenGrid(Matrix(m, d, std::move(values)), w, h, f);
  } catch (const Error& e) {
    Fail(ErrorKind::kFormat, e.what());
  }
}

void WriteGrid(const TokenGrid& grid, const std::filesystem::path& header_path,
               Dtype dtype) {
  std::filesystem::path payload = header_path;
  payload.replace_extension(".bin");
  ordered_json header;
  header["M"] = grid.size();
  header["D"] = grid.dim();
  header["W"] = grid.width();
  header["H"] = grid.height();
  header["F"] = grid.frames();
  header["dtype"] = dtype == Dtype::kF32 ? "f32" : "f64";
  header["layout"] = "row-major";
  header["payload"] = payload.filename().string();
  WriteText(header_path, header.dump(2) + "\n");

  std::string bytes;
  const auto values = grid.embeddings().data();
  if (dtype == Dtype::kF32) {
    bytes.resize(values.size() * 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto v = static_cast<float>(values[i]);
      std::memcpy(bytes.data() + i * 4, &v, 4);
    }
  } else {
    bytes.resize(values.size() * 8);
    std::memcpy(bytes.data(), values.data(), bytes.size());
  }
  WriteText(payload, bytes);
}

TokenGrid ReadGridCsv(const std::filesystem::path& path) {
  std::istringstream in(ReadText(path));
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kFormat, "empty CSV");
  const std::vector<std::string> head = SplitCsvLine(line);
  if (head.size() < 4 || head[0] != "x" || head[1] != "y" ||
      head[2] != "frame") {
    Fail(ErrorKind::kFormat, "CSV header must start with x,y,frame,f0");
  }
  const std::size_t d = head.size() - 3;
  for (std::size_t j = 0; j < d; ++j) {
    if (head[3 + j] != "f" + std::to_string(j)) {
      Fail(ErrorKind::kFormat, "CSV feature column " + std::to_string(j) +
                                   " must be named f" + std::to_string(j));
    }
  }

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
           std::vector<double>>
      cells;
  std::size_t w = 0, h = 0, f = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cols = SplitCsvLine(line);
    if (cols.size() != d + 3) {
      Fail(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": " +
                                   std::to_string(cols.size()) +
                                   " columns, expected " +
                                   std::to_string(d + 3));
    }
    const std::size_t x = ParseIndex(cols[0], line_no);
    const std::size_t y = ParseIndex(cols[1], line_no);
    const std::size_t fr = ParseIndex(cols[2], line_no);
    std::vector<double> feats(d);
    for (std::size_t j = 0; j < d; ++j) {
      feats[j] = ParseDouble(cols[3 + j], line_no);
    }
    if (!cells.emplace(std::tuple{fr, y, x}, std::move(feats)).second) {
      Fail(ErrorKind::kFormat,
           "line " + std::to_string(line_no) + ": duplicate cell");
    }
    w = std::max(w, x + 1);
    h = std::max(h, y + 1);
    f = std::max(f, fr + 1);
  }
  if (cells.empty() || cells.size() != w * h * f) {
    Fail(ErrorKind::kFormat, "CSV rows do not cover a full W x H x F grid");
  }
  Matrix e(cells.size(), d);
  std::size_t i = 0;
  for (const auto& [key, feats] : cells) {  // (frame, row, col) order
    std::copy(feats.begin(), feats.end(), e.row(i++).begin());
  }
  try {
    return TokenGrid(std::move(e), w, h, f);
  } catch (const Error& err) {
    Fail(ErrorKind::kFormat, err.what());
  }
}

TokenGrid LoadGrid(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return ReadGridCsv(path);
  return ReadGrid(path);
}

ordered_json SelectionToJson(const Selection& sel) {
  ordered_json j;
  j["method"] = MethodName(sel.method);
  j["k"] = sel.k;
  j["ratio"] = sel.config.ratio;
  j["seed"] = sel.config.seed;
  j["epsilon"] = sel.config.epsilon;
  j["indices"] = sel.indices;
  j["pick_order"] = sel.pick_order;
  return j;
}

Selection SelectionFromJson(const json& j) {
  try {
    Selection sel;
    const auto method = ParseMethod(j.at("method").get<std::string>());
    if (!method) Fail(ErrorKind::kFormat, "selection has unknown method");
    sel.method = *method;
    sel.k = j.at("k").get<std::size_t>();
    sel.config.ratio = j.at("ratio").get<double>();
    sel.config.seed = j.value("seed", std::uint64_t{0});
    sel.config.epsilon = j.value("epsilon", kDefaultEpsilon);
    sel.indices = j.at("indices").get<std::vector<std::size_t>>();
    sel.pick_order =
        j.value("pick_order", std::vector<std::size_t>(sel.indices));
    if (sel.indices.size() != sel.k) {
      Fail(ErrorKind::kFormat, "selection k does not match index count");
    }
    for (std::size_t i = 1; i < sel.indices.size(); ++i) {
      if (sel.indices[i] <= sel.indices[i - 1]) {
        Fail(ErrorKind::kFormat, "selection indices must strictly increase");
      }
    }
    return sel;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("selection JSON: ") + e.what());
  }
}

Selection ReadSelection(const std::filesystem::path& path) {
  try {
    return SelectionFromJson(json::parse(ReadText(path)));
  } catch (const json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("selection JSON: ") + e.what());
  }
}

ordered_json CoverageToJson(const CoverageReport& report) {
  ordered_json j;
  j["R_f"] = report.feature_radius;
  j["R_j"] = report.joint_radius;
  j["R_s"] = report.spatial_radius;
  ordered_json balls = ordered_json::array();
  for (const auto& b : report.epsilon_ball_fractions) {
    balls.push_back({{"epsilon", b.epsilon},
                     {"covered_fraction", b.covered_fraction}});
  }
  j["epsilon_ball"] = std::move(balls);
  return j;
}

std::string CoverageCsvHeader(std::span<const double> epsilons) {
  std::string out = "method,ratio,seed,R_f,R_j,R_s";
  for (double e : epsilons) out += ",eps=" + FormatDouble(e);
  return out;
}

std::string CoverageCsvRow(const Selection& sel,
                           const CoverageReport& report) {
  std::string out = std::string(MethodName(sel.method)) + "," +
                    FormatDouble(sel.config.ratio) + "," +
                    std::to_string(sel.config.seed) + "," +
                    FormatDouble(report.feature_radius) + "," +
                    FormatDouble(report.joint_radius) + "," +
                    FormatDouble(report.spatial_radius);
  for (const auto& b : report.epsilon_ball_fractions) {
    out += "," + FormatDouble(b.covered_fraction);
  }
  return out;
}

}  // namespace coreprune::io
