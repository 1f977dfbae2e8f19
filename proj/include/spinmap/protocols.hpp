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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinmap/entanglement.hpp"
#include "spinmap/quantum_map.hpp"
#include "spinmap/spin_network.hpp"

namespace spinmap {

enum class ScenarioKind {
  kQst,
  kDistributeSingle,
  kDistributeDual,
  kTwoQubitTransfer,
  kStorage,
  kWeakPair,
  kFourQubitWeak,
  kClosedFormFourQubit,
};

ScenarioKind parse_scenario_kind(std::string_view name);
std::string_view scenario_kind_name(ScenarioKind kind);

/// Network description. Site numbering per shape:
///   chain      sites 0..sites-1, uniform coupling
///   weak_ends  A=0, wire 1..sites, B=sites+1; A and B attach with weak_coupling
///   dimer_wire A1=0, A2=1, wire 2..sites+1, B2=sites+2, B1=sites+3;
///              A1-A2 and B1-B2 bonds carry dimer_coupling, A2 and B2 attach
///              to the wire ends with weak_coupling
///   custom     explicit matrices
struct NetworkSpec {
  enum class Shape { kChain, kWeakEnds, kDimerWire, kCustom };

  Shape shape = Shape::kChain;
  int sites = 3;
  double coupling = 1.0;
  double weak_coupling = 0.1;
  double dimer_coupling = 1.0;
  double anisotropy = 0.0;
  double field = 0.0;
  RMatrix xy;
  RMatrix zz;
  RVector fields;

  SpinNetwork build() const;
  int total_sites() const;
};

NetworkSpec::Shape parse_network_shape(std::string_view name);
std::string_view network_shape_name(NetworkSpec::Shape shape);

struct InputStateSpec {
  enum class Kind { kBell, kWerner, kXState, kBasis, kMatrix };

  Kind kind = Kind::kBell;
  BellState bell = BellState::kPsiPlus;
  double p = 1.0;
  XState x;
  std::string bits;
  CMatrix matrix;

  DensityMatrix build() const;
  /// True when the built state has the X pattern.
  bool is_x_state() const;
};

InputStateSpec::Kind parse_input_kind(std::string_view name);
std::string_view input_kind_name(InputStateSpec::Kind kind);

/// Strictly increasing list of evaluation times.
struct TimeGrid {
  struct Range {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
  };

  std::vector<double> times;
  /// Set when the grid came from linspace; lets configs round-trip compactly.
  std::optional<Range> range;

  static TimeGrid linspace(double start, double stop, int points);
  void validate() const;
};

enum class FourQubitInitial { k1100, k1010 };

FourQubitInitial parse_four_qubit_initial(std::string_view bits);
std::string_view four_qubit_initial_name(FourQubitInitial initial);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kDistributeSingle;
  NetworkSpec network;
  /// Second rail for distribute_dual; identical to `network` when absent.
  std::optional<NetworkSpec> second_rail;
  std::vector<Site> senders;
  std::vector<Site> receivers;
  InputStateSpec input;
  TimeGrid times;

  // Closed-form four-qubit parameters.
  double g = 0.01;
  double J = 1.0;
  FourQubitInitial initial = FourQubitInitial::k1010;

  bool oracle_check = false;
  bool cptp_check = true;
  double oracle_tolerance = 1e-8;
  double psd_tolerance = tol::kPsdFloor;
  bool refine_peak = false;

  /// Throws std::invalid_argument on inconsistent site assignments or grids.
  void validate() const;
};

struct Peak {
  std::string column;
  double time = 0.0;
  double value = 0.0;
  bool refined = false;
};

struct Diagnostics {
  bool oracle_checked = false;
  double max_oracle_distance = 0.0;
  bool cptp_checked = false;
  double min_choi_eigenvalue = 0.0;
  double max_trace_deviation = 0.0;
  bool closed_form_compared = false;
  double max_closed_form_distance = 0.0;

  /// Every enabled check within its tolerance.
  bool passed(double oracle_tolerance, double psd_tolerance) const;
};

struct ScenarioResult {
  std::vector<std::string> columns;
  /// Columns holding entanglement measures, range-checked to [0, 1].
  std::vector<bool> measure;
  std::vector<std::vector<double>> rows;
  std::optional<Peak> peak;
  Diagnostics diagnostics;
  std::vector<std::string> notes;

  std::size_t column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;
  void add_column(std::string name, bool is_measure);
  /// Appends a row after range-checking measure columns.
  void add_row(std::vector<double> row);
};

ScenarioResult run(const ScenarioSpec& spec);

/// Printed four-qubit superpositions, qubits ordered A1 A2 B1 B2. Throws for
/// nonpositive couplings.
CVector closed_form_four_qubit(double g, double J, double t,
                               FourQubitInitial initial);

/// Measure columns for the |1010> closed form over consecutive windows.
/// Throws std::runtime_error if C_A1B1 or C_A2B2 leave zero.
ScenarioResult four_qubit_measure_sweep(double g, double J,
                                        std::span<const TimeGrid> windows);

/// Default windows starting at 0, pi J/(4 g^2), pi J/(2 g^2), each of width
/// `width` (default pi/J) with `points` samples.
std::vector<TimeGrid> four_qubit_windows(double g, double J, int points,
                                         std::optional<double> width = {});

enum class SweepAxis { kP, kG, kJ, kDelta, kH };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);

/// One result per grid value with the swept value prepended as a column.
std::vector<ScenarioResult> sweep(const ScenarioSpec& spec, SweepAxis axis,
                                  std::span<const double> values);

/// Concatenates results sharing a column layout.
ScenarioResult merge(std::span<const ScenarioResult> parts);

}  // namespace spinmap
