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

#include "spinmap/figures.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmap {

namespace {

void check_options(const RatioFigureOptions& o) {
  if (o.p_values.empty()) throw std::invalid_argument("no p values given");
  if (o.f_points < 2) throw std::invalid_argument("need at least two |f| points");
  for (double p : o.p_values) {
    if (!(p > 1.0 / 3.0 && p <= 1.0)) {
      throw std::invalid_argument("ratio figures need 1/3 < p <= 1 (entangled input)");
    }
  }
}

}  // namespace

ScenarioResult figure3(const RatioFigureOptions& options) {
  check_options(options);
  ScenarioResult r;
  r.add_column("p", false);
  r.add_column("f_abs", false);
  r.add_column("ratio", true);
  const auto grid = TimeGrid::linspace(0.0, 1.0, options.f_points).times;
  for (double p : options.p_values) {
    const XState x = werner_x_state(p, options.bell);
    const double c0 = x_state_concurrence(x).c;
    for (double f : grid) {
      r.add_row({p, f, x_state_transferred_concurrence(x, f).c / c0});
    }
  }
  return r;
}

ScenarioResult figure5(const RatioFigureOptions& options) {
  check_options(options);
  ScenarioResult r;
  r.add_column("family", false);
  r.add_column("p", false);
  r.add_column("f_abs", false);
  r.add_column("ratio", true);
  const auto grid = TimeGrid::linspace(0.0, 1.0, options.f_points).times;
  const BellState families[] = {BellState::kPhiPlus, BellState::kPsiPlus};
  for (int fam = 0; fam < 2; ++fam) {
    for (double p : options.p_values) {
      const XState x = werner_x_state(p, families[fam]);
      const double c0 = x_state_concurrence(x).c;
      for (double f : grid) {
        r.add_row({static_cast<double>(fam), p, f,
                   dual_rail_transferred_concurrence(x, f).c / c0});
      }
    }
  }
  return r;
}

ScenarioResult figure7(const Figure7Options& options) {
  if (!(options.J > 0.0 && options.ratio > 0.0)) {
    throw std::invalid_argument("figure 7 needs positive J and J^2/g^2");
  }
  const double g = options.J / std::sqrt(options.ratio);
  const auto windows = four_qubit_windows(g, options.J, options.points, options.width);
  return four_qubit_measure_sweep(g, options.J, windows);
}

}  // namespace spinmap
