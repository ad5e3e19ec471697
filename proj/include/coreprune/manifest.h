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

#ifndef COREPRUNE_MANIFEST_H_
#define COREPRUNE_MANIFEST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace coreprune {

inline constexpr std::string_view kVersion = "0.3.0";

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// {"tool", "version", "command", "config", "config_hash", "seeds"}.
// config_hash is FNV-1a over config.dump() in hex; the manifest holds
// nothing run-dependent (no timestamps, no thread counts).
nlohmann::ordered_json MakeManifest(std::string_view command,
                                    const nlohmann::ordered_json& config,
                                    const std::vector<std::uint64_t>& seeds);

}  // namespace coreprune

#endif  // COREPRUNE_MANIFEST_H_
