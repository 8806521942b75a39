// Copyright 2026 The wwkde Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wwkde::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kContractError = 1,  ///< bad flags, malformed config, unreadable input
  kFalsified = 2,      ///< calibration failure or acceptance-window miss
};

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::uint64_t base_seed = 0;
  std::string start_time;
  std::string end_time;
  std::vector<std::string> outputs;
};

/// Hex SHA-256 of the compact dump of `config`. nlohmann::json keeps object
/// keys sorted, so documents differing only in key order or whitespace
/// hash identically.
std::string config_hash(const nlohmann::json& config);

nlohmann::json to_json(const RunManifest& manifest);

/// UTC timestamp, ISO 8601 with seconds.
std::string utc_now();

/// Runs one subcommand; see README for the list. Returns an ExitCode.
int dispatch(int argc, const char* const* argv);

}  // namespace wwkde::cli
