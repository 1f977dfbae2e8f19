// Copyright 2026 The spinmap Authors
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

// YAML run configuration. Example:
//
//   scenario: distribute_single
//   network: {shape: chain, sites: 3, coupling: 1.0}
//   senders: [0]
//   receivers: [2]
//   input: {kind: bell, bell: psi+}
//   times: {start: 0, stop: 2, points: 201}
//   checks: {oracle: true, cptp: true}
//   output: distribute.csv

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinmap/protocols.hpp"

namespace spinmap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::kP;
  std::vector<double> values;
};

struct RunConfig {
  ScenarioSpec scenario;
  std::optional<SweepSpec> sweep;
  std::string output;  // empty: decided by the caller
};

/// Throws ConfigError on malformed YAML, unknown keys, wrong types or an
/// invalid scenario.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical YAML text; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

}  // namespace spinmap
