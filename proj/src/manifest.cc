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

#include "coreprune/manifest.h"

#include <cstdio>

namespace coreprune {

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

nlohmann::ordered_json MakeManifest(std::string_view command,
                                    const nlohmann::ordered_json& config,
                                    const std::vector<std::uint64_t>& seeds) {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(config.dump())));
  nlohmann::ordered_json m;
  m["tool"] = "coreprune";
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = config;
  m["config_hash"] = hex;
  m["seeds"] = seeds;
  return m;
}

}  // namespace coreprune
