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

#include <cstdint>
#include <string>
#include <vector>

namespace spinmap {

struct CheckResult {
  std::string name;
  bool passed = false;
  double witness = 0.0;    // worst observed deviation
  double threshold = 0.0;  // pass iff witness <= threshold
  std::string detail;
};

struct VerifyOptions {
  int sites = 6;  // 3..10
  std::uint64_t seed = 1;
  int samples = 6;  // random (time, sites, state) draws per check
  double oracle_tolerance = 1e-8;
};

/// Runs the invariant suite on a random network: sector Hermiticity,
/// unitarity and completeness, block consistency with the dense oracle,
/// magnetization conservation, CPTP of the reduced maps, map-oracle
/// equivalence, element table against Kraus construction, the U(1) zero
/// pattern and the Kraus/Choi round trip.
std::vector<CheckResult> verify_invariants(const VerifyOptions& options);

}  // namespace spinmap
