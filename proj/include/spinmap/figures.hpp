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

// Data behind the published figures. Column layouts:
//   figure 3: p, f_abs, ratio
//   figure 5: family (0 = phi+, 1 = psi+), p, f_abs, ratio
//   figure 7: window, t, t_scaled, c_a1b2, c_a2b1, c_a1a2, c_b1b2, c_a1b1,
//             c_a2b2, tau4, c4, tau3_max, exclusive_flag

#include <optional>
#include <vector>

#include "spinmap/protocols.hpp"

namespace spinmap {

struct RatioFigureOptions {
  std::vector<double> p_values{0.4, 0.5, 0.7, 0.9, 1.0};
  int f_points = 101;
  BellState bell = BellState::kPsiPlus;  // figure 3 only
};

/// Transferred over initial concurrence for Werner inputs after one
/// qubit crosses the one-qubit map, on a uniform |f| grid over [0, 1].
ScenarioResult figure3(const RatioFigureOptions& options = {});

/// Same ratio with both qubits sent through identical maps, for the phi+ and
/// psi+ Werner families.
ScenarioResult figure5(const RatioFigureOptions& options = {});

struct Figure7Options {
  double J = 1.0;
  double ratio = 1e4;  // J^2 / g^2
  int points = 2001;
  std::optional<double> width;  // defaults to pi / J
};

ScenarioResult figure7(const Figure7Options& options = {});

}  // namespace spinmap
