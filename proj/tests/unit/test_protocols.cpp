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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "reference.hpp"
#include "spinmap/figures.hpp"
#include "spinmap/protocols.hpp"

using namespace spinmap;

namespace {

ScenarioSpec chain_spec(ScenarioKind kind, int sites, std::vector<Site> s,
                        std::vector<Site> r) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.network.shape = NetworkSpec::Shape::kChain;
  spec.network.sites = sites;
  spec.senders = std::move(s);
  spec.receivers = std::move(r);
  spec.times = TimeGrid::linspace(0.0, 3.0, 16);
  spec.oracle_check = true;
  return spec;
}

void check_measures_in_range(const ScenarioResult& r) {
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      if (r.measure[c]) {
        CHECK(row[c] >= 0.0);
        CHECK(row[c] <= 1.0);
      }
    }
  }
}

}  // namespace

TEST_CASE("time grids", "[protocols]") {
  auto g = TimeGrid::linspace(0.0, 1.0, 5);
  REQUIRE(g.times.size() == 5);
  CHECK(g.times.back() == 1.0);
  CHECK_THROWS(TimeGrid::linspace(0.0, 1.0, 0));
  TimeGrid bad;
  bad.times = {0.0, std::nan("")};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("scenario validation", "[protocols]") {
  auto spec = chain_spec(ScenarioKind::kQst, 4, {0, 1}, {3});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = chain_spec(ScenarioKind::kQst, 4, {0}, {7});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = chain_spec(ScenarioKind::kStorage, 4, {0, 1}, {2, 3});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = chain_spec(ScenarioKind::kWeakPair, 4, {0}, {0, 3});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("Bell-state distribution yields |f|", "[protocols]") {
  auto spec = chain_spec(ScenarioKind::kDistributeSingle, 5, {0}, {4});
  spec.input.kind = InputStateSpec::Kind::kBell;
  spec.input.bell = BellState::kPhiMinus;
  auto r = run(spec);
  check_measures_in_range(r);
  CHECK(r.diagnostics.passed(spec.oracle_tolerance, spec.psd_tolerance));
  auto c = r.column_values("concurrence");
  auto f = r.column_values("f_abs");
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(c[k] - f[k]) < 1e-10);
}

TEST_CASE("every scenario kind runs and passes its diagnostics", "[protocols]") {
  std::vector<ScenarioSpec> specs;
  specs.push_back(chain_spec(ScenarioKind::kQst, 4, {0}, {3}));
  specs.back().input.kind = InputStateSpec::Kind::kBasis;
  specs.back().input.bits = "1";
  specs.push_back(chain_spec(ScenarioKind::kDistributeDual, 4, {0}, {3}));
  specs.back().input.kind = InputStateSpec::Kind::kWerner;
  specs.back().input.p = 0.8;
  specs.push_back(chain_spec(ScenarioKind::kTwoQubitTransfer, 5, {0, 1}, {4, 3}));
  specs.push_back(chain_spec(ScenarioKind::kStorage, 5, {1, 3}, {1, 3}));
  {
    ScenarioSpec w;
    w.kind = ScenarioKind::kWeakPair;
    w.network.shape = NetworkSpec::Shape::kWeakEnds;
    w.network.sites = 2;
    w.network.weak_coupling = 0.1;
    w.senders = {0};
    w.receivers = {0, 3};
    w.input.kind = InputStateSpec::Kind::kBasis;
    w.input.bits = "1";
    w.times = TimeGrid::linspace(0.0, 200.0, 41);
    w.oracle_check = true;
    specs.push_back(w);
  }
  {
    ScenarioSpec q;
    q.kind = ScenarioKind::kFourQubitWeak;
    q.network.shape = NetworkSpec::Shape::kDimerWire;
    q.network.sites = 2;
    q.senders = {0, 1, 5, 4};
    q.receivers = {0, 1, 5, 4};
    q.input.kind = InputStateSpec::Kind::kBasis;
    q.input.bits = "1100";
    q.times = TimeGrid::linspace(0.0, 20.0, 11);
    q.oracle_check = true;
    specs.push_back(q);
  }
  for (const auto& spec : specs) {
    INFO(scenario_kind_name(spec.kind));
    REQUIRE_NOTHROW(spec.validate());
    auto r = run(spec);
    CHECK(r.rows.size() == spec.times.times.size());
    CHECK(r.diagnostics.oracle_checked);
    CHECK(r.diagnostics.passed(spec.oracle_tolerance, spec.psd_tolerance));
    check_measures_in_range(r);
  }
}

TEST_CASE("storage at t = 0 is the identity", "[protocols]") {
  auto spec = chain_spec(ScenarioKind::kStorage, 5, {1, 3}, {1, 3});
  spec.times = TimeGrid::linspace(0.0, 0.0, 1);
  auto r = run(spec);
  CHECK(r.column_values("trace_distance_input")[0] < 1e-14);
  CHECK(std::abs(r.column_values("concurrence")[0] - 1.0) < 1e-12);
}

TEST_CASE("closed-form four-qubit states match the printed forms", "[protocols]") {
  const double g = 0.05, J = 1.0;
  for (double t : {0.0, 13.0, 400.0, 1234.5}) {
    auto a = closed_form_four_qubit(g, J, t, FourQubitInitial::k1100);
    CHECK(reference::phase_distance(a, reference::psi_1100(g, J, t)) < 1e-12);
    auto b = closed_form_four_qubit(g, J, t, FourQubitInitial::k1010);
    CHECK(reference::phase_distance(b, reference::psi_1010(g, J, t)) < 1e-12);
    CHECK(std::abs(a.norm() - 1.0) < 1e-12);
    CHECK(std::abs(b.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("four-qubit windows", "[protocols]") {
  const double g = 0.01, J = 1.0;
  auto w = four_qubit_windows(g, J, 11);
  REQUIRE(w.size() == 3);
  CHECK(w[0].times.front() == 0.0);
  CHECK(std::abs(w[1].times.front() - std::numbers::pi * J / (4 * g * g)) < 1e-9);
  CHECK(std::abs(w[2].times.front() - std::numbers::pi * J / (2 * g * g)) < 1e-9);
  CHECK(std::abs(w[0].times.back() - std::numbers::pi / J) < 1e-12);
}

TEST_CASE("sweeps prepend the axis column", "[protocols]") {
  auto spec = chain_spec(ScenarioKind::kDistributeSingle, 3, {0}, {2});
  spec.input.kind = InputStateSpec::Kind::kWerner;
  const std::vector<double> ps{0.5, 0.9};
  auto parts = sweep(spec, SweepAxis::kP, ps);
  REQUIRE(parts.size() == 2);
  auto merged = merge(parts);
  CHECK(merged.columns.front() == "p");
  CHECK(merged.rows.size() == 2 * spec.times.times.size());
  CHECK(merged.rows.back().front() == 0.9);
  CHECK_THROWS(sweep(spec, SweepAxis::kP, std::vector<double>{}));
  CHECK_THROWS(parse_sweep_axis("temperature"));
}

TEST_CASE("ratio figures have the documented shape", "[protocols]") {
  RatioFigureOptions opt;
  opt.f_points = 11;
  auto f3 = figure3(opt);
  CHECK(f3.columns == std::vector<std::string>{"p", "f_abs", "ratio"});
  CHECK(f3.rows.size() == 55);
  auto f5 = figure5(opt);
  CHECK(f5.columns == std::vector<std::string>{"family", "p", "f_abs", "ratio"});
  CHECK(f5.rows.size() == 110);
}
