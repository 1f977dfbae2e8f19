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

#include "spinmap/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "spinmap/oracle.hpp"

namespace spinmap {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

SpinNetwork disjoint_union(const SpinNetwork& a, const SpinNetwork& b) {
  const int na = a.site_count(), nb = b.site_count();
  RMatrix xy = RMatrix::Zero(na + nb, na + nb);
  RMatrix zz = RMatrix::Zero(na + nb, na + nb);
  RVector h(na + nb);
  xy.topLeftCorner(na, na) = a.xy_couplings();
  xy.bottomRightCorner(nb, nb) = b.xy_couplings();
  zz.topLeftCorner(na, na) = a.zz_couplings();
  zz.bottomRightCorner(nb, nb) = b.zz_couplings();
  h << a.fields(), b.fields();
  return SpinNetwork(std::move(xy), std::move(zz), std::move(h));
}

SpinNetwork isolated_site() {
  return SpinNetwork(RMatrix::Zero(1, 1), RMatrix::Zero(1, 1), RVector::Zero(1));
}

void set_bond(RMatrix& m, int a, int b, double v) { m(a, b) = m(b, a) = v; }

double pure_fidelity(const CMatrix& in, const CMatrix& out) {
  return (in * out).trace().real();
}

bool is_pure(const DensityMatrix& rho) { return rho.purity() > 1.0 - 1e-12; }

// Tracks CPTP and oracle diagnostics across a run.
struct Checker {
  const ScenarioSpec& spec;
  Diagnostics& d;

  void map(const Superoperator& s) {
    if (!spec.cptp_check) return;
    const auto v = is_cptp(s, spec.psd_tolerance);
    if (!d.cptp_checked) {
      d.cptp_checked = true;
      d.min_choi_eigenvalue = v.min_eigenvalue;
    }
    d.min_choi_eigenvalue = std::min(d.min_choi_eigenvalue, v.min_eigenvalue);
    d.max_trace_deviation = std::max(d.max_trace_deviation, v.trace_deviation);
  }

  void oracle(const DensityMatrix& map_out, const DensityMatrix& oracle_out) {
    d.oracle_checked = true;
    d.max_oracle_distance = std::max(
        d.max_oracle_distance, trace_distance(map_out.matrix(), oracle_out.matrix()));
  }
};

std::unique_ptr<oracle::FullEvolution> maybe_oracle(const ScenarioSpec& spec,
                                                    const SpinNetwork& net) {
  if (!spec.oracle_check) return nullptr;
  require(net.site_count() <= oracle::kMaxSites,
          "oracle check requested for " + std::to_string(net.site_count()) +
              " sites; the cap is " + std::to_string(oracle::kMaxSites));
  return std::make_unique<oracle::FullEvolution>(net);
}

Complex relative_single(const AmplitudeTable& k1, const SpinNetwork& net,
                        Site source, Site target) {
  return single_amplitude(k1, source, target) *
         std::polar(1.0, net.vacuum_energy() * k1.time);
}

// Golden-section maximization of f on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

void find_peak(ScenarioResult& r, const std::string& column,
               const std::vector<double>& times, bool refine,
               const std::function<double(double)>& value_at) {
  const auto values = r.column_values(column);
  if (values.empty()) return;
  const auto it = std::max_element(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(it - values.begin());
  Peak p{column, times[k], *it, false};
  if (refine && value_at && k > 0 && k + 1 < times.size()) {
    const auto [t, v] = golden_max(value_at, times[k - 1], times[k + 1]);
    if (v >= p.value) {
      p.time = t;
      p.value = v;
      p.refined = true;
    }
  }
  r.peak = p;
}

// -------------------------------------------------------------------------

ScenarioResult run_qst(const ScenarioSpec& spec) {
  const SpinNetwork net = spec.network.build();
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 2, "qst needs a one-qubit input state");
  const SectorPropagator k1(net, 1);
  const auto oracle = maybe_oracle(spec, net);
  const bool pure = is_pure(rho);

  ScenarioResult r;
  for (const char* c : {"t", "f_re", "f_im", "f_abs", "out_00", "out_11",
                        "out_01_re", "out_01_im", "trace_distance_input"}) {
    r.add_column(c, false);
  }
  if (pure) r.add_column("fidelity", false);
  Checker check{spec, r.diagnostics};
  for (double t : spec.times.times) {
    const Complex f = relative_single(k1.at(t), net, spec.senders[0], spec.receivers[0]);
    const auto map = superop_from_kraus(one_qubit_kraus(f));
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      check.oracle(out, oracle::reduced_output(*oracle, rho, spec.senders,
                                               spec.receivers, t));
    }
    std::vector<double> row{t, f.real(), f.imag(), std::abs(f),
                            out(0, 0).real(), out(1, 1).real(), out(0, 1).real(),
                            out(0, 1).imag(),
                            trace_distance(out.matrix(), rho.matrix())};
    if (pure) row.push_back(pure_fidelity(rho.matrix(), out.matrix()));
    r.add_row(std::move(row));
  }
  return r;
}

ScenarioResult run_distribute_single(const ScenarioSpec& spec) {
  const SpinNetwork net = spec.network.build();
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 4, "distribute_single needs a two-qubit input state");
  const SectorPropagator k1(net, 1);
  const Site i = spec.senders[0], j = spec.receivers[0];
  const SpinNetwork full = disjoint_union(net, isolated_site());
  const auto oracle = maybe_oracle(spec, full);
  const Site ext = net.site_count();
  const bool x = spec.input.is_x_state();
  const XState xs = x ? XState::from_matrix(rho.matrix()) : XState{};
  const double c_in = concurrence(rho);

  ScenarioResult r;
  for (const char* c : {"t", "f_re", "f_im", "f_abs"}) r.add_column(c, false);
  r.add_column("concurrence", true);
  r.add_column("concurrence_in", true);
  r.add_column("ratio", false);
  if (x) r.add_column("concurrence_formula", true);
  Checker check{spec, r.diagnostics};

  auto concurrence_at = [&](double t) {
    const Complex f = relative_single(k1.at(t), net, i, j);
    return concurrence(apply(extend_with_identity(one_qubit_superoperator(f),
                                                  IdentitySide::kLeft),
                             rho));
  };

  for (double t : spec.times.times) {
    const Complex f = relative_single(k1.at(t), net, i, j);
    const auto map = extend_with_identity(superop_from_kraus(one_qubit_kraus(f)),
                                          IdentitySide::kLeft);
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      const Site s[] = {ext, i};
      const Site q[] = {ext, j};
      check.oracle(out, oracle::reduced_output(*oracle, rho, s, q, t));
    }
    const double c = concurrence(out);
    std::vector<double> row{t, f.real(), f.imag(), std::abs(f), c, c_in,
                            c_in > 0.0 ? c / c_in : 0.0};
    if (x) row.push_back(x_state_transferred_concurrence(xs, f).c);
    r.add_row(std::move(row));
  }
  find_peak(r, "concurrence", spec.times.times, spec.refine_peak, concurrence_at);
  return r;
}

ScenarioResult run_distribute_dual(const ScenarioSpec& spec) {
  const SpinNetwork rail1 = spec.network.build();
  const SpinNetwork rail2 = spec.second_rail ? spec.second_rail->build() : rail1;
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 4, "distribute_dual needs a two-qubit input state");
  const Site i = spec.senders[0], j = spec.receivers[0];
  require(i < rail2.site_count() && j < rail2.site_count(),
          "sites out of range on the second rail");
  const SectorPropagator p1(rail1, 1), p2(rail2, 1);
  const SpinNetwork full = disjoint_union(rail1, rail2);
  const auto oracle = maybe_oracle(spec, full);
  const int off = rail1.site_count();
  const bool formula = spec.input.is_x_state() && !spec.second_rail;
  const XState xs = formula ? XState::from_matrix(rho.matrix()) : XState{};
  const double c_in = concurrence(rho);

  ScenarioResult r;
  for (const char* c : {"t", "f_re", "f_im", "f_abs", "g_re", "g_im", "g_abs"}) {
    r.add_column(c, false);
  }
  r.add_column("concurrence", true);
  r.add_column("concurrence_in", true);
  r.add_column("ratio", false);
  if (formula) {
    r.add_column("c1", false);
    r.add_column("c2", false);
    r.add_column("concurrence_formula", true);
  }
  Checker check{spec, r.diagnostics};
  for (double t : spec.times.times) {
    const Complex f = relative_single(p1.at(t), rail1, i, j);
    const Complex g = relative_single(p2.at(t), rail2, i, j);
    const auto map = tensor(superop_from_kraus(one_qubit_kraus(f)),
                            superop_from_kraus(one_qubit_kraus(g)));
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      const Site s[] = {i, off + i};
      const Site q[] = {j, off + j};
      check.oracle(out, oracle::reduced_output(*oracle, rho, s, q, t));
    }
    const double c = concurrence(out);
    std::vector<double> row{t, f.real(), f.imag(), std::abs(f), g.real(), g.imag(),
                            std::abs(g), c, c_in, c_in > 0.0 ? c / c_in : 0.0};
    if (formula) {
      const auto v = dual_rail_transferred_concurrence(xs, f);
      row.insert(row.end(), {v.c1, v.c2, v.c});
    }
    r.add_row(std::move(row));
  }
  find_peak(r, "concurrence", spec.times.times, false, {});
  return r;
}

ScenarioResult run_two_qubit(const ScenarioSpec& spec) {
  const SpinNetwork net = spec.network.build();
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 4, "two-qubit scenarios need a two-qubit input state");
  const SectorPropagator k1(net, 1), k2(net, 2);
  const auto oracle = maybe_oracle(spec, net);
  const SitePair s{spec.senders[0], spec.senders[1]};
  const SitePair q{spec.receivers[0], spec.receivers[1]};
  const bool pure = is_pure(rho);
  const double c_in = concurrence(rho);

  ScenarioResult r;
  r.add_column("t", false);
  r.add_column("pair_amplitude_abs", false);
  r.add_column("concurrence", true);
  r.add_column("concurrence_in", true);
  r.add_column("trace_distance_input", false);
  if (pure) r.add_column("fidelity", false);
  Checker check{spec, r.diagnostics};
  for (double t : spec.times.times) {
    const auto t1 = relative_to_vacuum(k1.at(t), net);
    const auto t2 = relative_to_vacuum(k2.at(t), net);
    const auto map = superop_from_kraus(two_qubit_kraus(t1, t2, s, q));
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      check.oracle(out, oracle::reduced_output(*oracle, rho, spec.senders,
                                               spec.receivers, t));
    }
    const SiteMask from = (SiteMask{1} << s.first) | (SiteMask{1} << s.second);
    const SiteMask to = (SiteMask{1} << q.first) | (SiteMask{1} << q.second);
    std::vector<double> row{t, std::abs(t2.at(to, from)), concurrence(out), c_in,
                            trace_distance(out.matrix(), rho.matrix())};
    if (pure) row.push_back(pure_fidelity(rho.matrix(), out.matrix()));
    r.add_row(std::move(row));
  }
  return r;
}

ScenarioResult run_weak_pair(const ScenarioSpec& spec) {
  const SpinNetwork net = spec.network.build();
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 2, "weak_pair needs a one-qubit input state");
  const ReducedMapBuilder builder(net, spec.senders, spec.receivers);
  const auto oracle = maybe_oracle(spec, net);

  ScenarioResult r;
  r.add_column("t", false);
  r.add_column("concurrence", true);
  r.add_column("population_a", false);
  r.add_column("population_b", false);
  Checker check{spec, r.diagnostics};
  auto concurrence_at = [&](double t) {
    return concurrence(apply(builder.superoperator(t), rho));
  };
  for (double t : spec.times.times) {
    const auto map = builder.superoperator(t);
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      check.oracle(out, oracle::reduced_output(*oracle, rho, spec.senders,
                                               spec.receivers, t));
    }
    r.add_row({t, concurrence(out), (out(2, 2) + out(3, 3)).real(),
               (out(1, 1) + out(3, 3)).real()});
  }
  find_peak(r, "concurrence", spec.times.times, spec.refine_peak, concurrence_at);
  return r;
}

ScenarioResult run_four_qubit_weak(const ScenarioSpec& spec) {
  const SpinNetwork net = spec.network.build();
  const DensityMatrix rho = spec.input.build();
  require(rho.dimension() == 16, "four_qubit_weak needs a four-qubit input state");
  const ReducedMapBuilder builder(net, spec.senders, spec.receivers);
  const auto oracle = maybe_oracle(spec, net);
  const double g = spec.network.weak_coupling;
  const double J = spec.network.coupling;
  std::optional<FourQubitInitial> closed;
  if (spec.input.kind == InputStateSpec::Kind::kBasis &&
      (spec.input.bits == "1100" || spec.input.bits == "1010") &&
      spec.senders == spec.receivers) {
    closed = parse_four_qubit_initial(spec.input.bits);
  }

  ScenarioResult r;
  r.add_column("t", false);
  r.add_column("t_scaled", false);
  r.add_column("purity", false);
  for (const char* c : {"c_a1b2", "c_a2b1", "c_a1a2", "c_b1b2", "c_a1b1", "c_a2b2"}) {
    r.add_column(c, true);
  }
  if (closed) r.add_column("closed_form_distance", false);
  Checker check{spec, r.diagnostics};
  for (double t : spec.times.times) {
    const auto map = builder.superoperator(t);
    check.map(map);
    const DensityMatrix out = apply(map, rho);
    if (oracle) {
      check.oracle(out, oracle::reduced_output(*oracle, rho, spec.senders,
                                               spec.receivers, t));
    }
    auto pc = [&](int a, int b) {
      const int keep[] = {a, b};
      return concurrence(reduce_qubits(out.matrix(), keep));
    };
    std::vector<double> row{t,         g * g * t / J, out.purity(), pc(0, 3),
                            pc(1, 2),  pc(0, 1),      pc(2, 3),     pc(0, 2),
                            pc(1, 3)};
    if (closed) {
      const CVector psi = closed_form_four_qubit(g, J, t, *closed);
      const double dist = trace_distance(out.matrix(), psi * psi.adjoint());
      row.push_back(dist);
      r.diagnostics.closed_form_compared = true;
      r.diagnostics.max_closed_form_distance =
          std::max(r.diagnostics.max_closed_form_distance, dist);
    }
    r.add_row(std::move(row));
  }
  if (closed) {
    r.notes.push_back(
        "closed-form distance is reported only; the wire geometry is a model choice");
  }
  return r;
}

void add_four_qubit_columns(ScenarioResult& r) {
  r.add_column("t", false);
  r.add_column("t_scaled", false);
  for (const char* c : {"c_a1b2", "c_a2b1", "c_a1a2", "c_b1b2", "c_a1b1", "c_a2b2",
                        "tau4", "c4", "tau3_max"}) {
    r.add_column(c, true);
  }
}

std::vector<double> four_qubit_row(double g, double J, double t,
                                   FourQubitInitial initial) {
  const auto rep = four_qubit_report(closed_form_four_qubit(g, J, t, initial));
  const double tau3 =
      *std::max_element(rep.three_tangle.begin(), rep.three_tangle.end());
  return {t,
          g * g * t / J,
          rep.pair_concurrence(0, 3),
          rep.pair_concurrence(1, 2),
          rep.pair_concurrence(0, 1),
          rep.pair_concurrence(2, 3),
          rep.pair_concurrence(0, 2),
          rep.pair_concurrence(1, 3),
          rep.four_tangle,
          rep.four_qubit_concurrence,
          tau3};
}

ScenarioResult run_closed_form(const ScenarioSpec& spec) {
  ScenarioResult r;
  add_four_qubit_columns(r);
  for (double t : spec.times.times) r.add_row(four_qubit_row(spec.g, spec.J, t, spec.initial));
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs

NetworkSpec::Shape parse_network_shape(std::string_view name) {
  if (name == "chain") return NetworkSpec::Shape::kChain;
  if (name == "weak_ends") return NetworkSpec::Shape::kWeakEnds;
  if (name == "dimer_wire") return NetworkSpec::Shape::kDimerWire;
  if (name == "custom") return NetworkSpec::Shape::kCustom;
  throw std::invalid_argument("unknown network shape '" + std::string(name) + "'");
}

std::string_view network_shape_name(NetworkSpec::Shape shape) {
  switch (shape) {
    case NetworkSpec::Shape::kChain:
      return "chain";
    case NetworkSpec::Shape::kWeakEnds:
      return "weak_ends";
    case NetworkSpec::Shape::kDimerWire:
      return "dimer_wire";
    case NetworkSpec::Shape::kCustom:
      return "custom";
  }
  return "?";
}

int NetworkSpec::total_sites() const {
  switch (shape) {
    case Shape::kChain:
      return sites;
    case Shape::kWeakEnds:
      return sites + 2;
    case Shape::kDimerWire:
      return sites + 4;
    case Shape::kCustom:
      return static_cast<int>(fields.size());
  }
  return 0;
}

SpinNetwork NetworkSpec::build() const {
  if (shape == Shape::kCustom) return SpinNetwork(xy, zz, fields);
  require(sites >= 1, "network needs at least one site");
  if (shape == Shape::kChain) {
    return SpinNetwork::uniform_chain(sites, coupling, anisotropy, field);
  }
  const int n = total_sites();
  RMatrix j = RMatrix::Zero(n, n);
  if (shape == Shape::kWeakEnds) {
    set_bond(j, 0, 1, weak_coupling);
    for (int k = 1; k < sites; ++k) set_bond(j, k, k + 1, coupling);
    set_bond(j, sites, sites + 1, weak_coupling);
  } else {
    set_bond(j, 0, 1, dimer_coupling);
    set_bond(j, 1, 2, weak_coupling);
    for (int k = 2; k <= sites; ++k) set_bond(j, k, k + 1, coupling);
    set_bond(j, sites + 1, sites + 2, weak_coupling);
    set_bond(j, sites + 2, sites + 3, dimer_coupling);
  }
  RMatrix d = RMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (j(a, b) != 0.0) d(a, b) = anisotropy;
  return SpinNetwork(std::move(j), std::move(d), RVector::Constant(n, field));
}

InputStateSpec::Kind parse_input_kind(std::string_view name) {
  if (name == "bell") return InputStateSpec::Kind::kBell;
  if (name == "werner") return InputStateSpec::Kind::kWerner;
  if (name == "xstate") return InputStateSpec::Kind::kXState;
  if (name == "basis") return InputStateSpec::Kind::kBasis;
  if (name == "matrix") return InputStateSpec::Kind::kMatrix;
  throw std::invalid_argument("unknown input kind '" + std::string(name) + "'");
}

std::string_view input_kind_name(InputStateSpec::Kind kind) {
  switch (kind) {
    case InputStateSpec::Kind::kBell:
      return "bell";
    case InputStateSpec::Kind::kWerner:
      return "werner";
    case InputStateSpec::Kind::kXState:
      return "xstate";
    case InputStateSpec::Kind::kBasis:
      return "basis";
    case InputStateSpec::Kind::kMatrix:
      return "matrix";
  }
  return "?";
}

DensityMatrix InputStateSpec::build() const {
  switch (kind) {
    case Kind::kBell:
      return DensityMatrix::from_pure(bell_state(bell));
    case Kind::kWerner:
      return werner(p, bell);
    case Kind::kXState:
      x.validate();
      return DensityMatrix(x.matrix());
    case Kind::kBasis:
      return DensityMatrix::from_bits(bits);
    case Kind::kMatrix:
      return DensityMatrix(matrix);
  }
  throw std::logic_error("unhandled input kind");
}

bool InputStateSpec::is_x_state() const {
  const CMatrix m = build().matrix();
  if (m.rows() != 4) return false;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3 && std::abs(m(r, c)) > tol::kState) return false;
  return true;
}

TimeGrid TimeGrid::linspace(double start, double stop, int points) {
  require(points >= 1, "time grid needs at least one point");
  require(std::isfinite(start) && std::isfinite(stop), "time grid bounds must be finite");
  TimeGrid g;
  g.range = TimeGrid::Range{start, stop, points};
  g.times.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    g.times.push_back(start);
    return g;
  }
  const double step = (stop - start) / (points - 1);
  for (int k = 0; k < points; ++k) g.times.push_back(k + 1 == points ? stop : start + k * step);
  return g;
}

void TimeGrid::validate() const {
  require(!times.empty(), "time grid is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    require(std::isfinite(times[k]), "time grid entries must be finite");
    require(k == 0 || times[k] > times[k - 1], "time grid must be strictly increasing");
  }
}

FourQubitInitial parse_four_qubit_initial(std::string_view bits) {
  if (bits == "1100") return FourQubitInitial::k1100;
  if (bits == "1010") return FourQubitInitial::k1010;
  throw std::invalid_argument("four-qubit closed forms exist for 1100 and 1010 only");
}

std::string_view four_qubit_initial_name(FourQubitInitial initial) {
  return initial == FourQubitInitial::k1100 ? "1100" : "1010";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  if (name == "qst") return ScenarioKind::kQst;
  if (name == "distribute_single") return ScenarioKind::kDistributeSingle;
  if (name == "distribute_dual") return ScenarioKind::kDistributeDual;
  if (name == "two_qubit_transfer") return ScenarioKind::kTwoQubitTransfer;
  if (name == "storage") return ScenarioKind::kStorage;
  if (name == "weak_pair") return ScenarioKind::kWeakPair;
  if (name == "four_qubit_weak") return ScenarioKind::kFourQubitWeak;
  if (name == "closed_form_four_qubit") return ScenarioKind::kClosedFormFourQubit;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string_view scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kQst:
      return "qst";
    case ScenarioKind::kDistributeSingle:
      return "distribute_single";
    case ScenarioKind::kDistributeDual:
      return "distribute_dual";
    case ScenarioKind::kTwoQubitTransfer:
      return "two_qubit_transfer";
    case ScenarioKind::kStorage:
      return "storage";
    case ScenarioKind::kWeakPair:
      return "weak_pair";
    case ScenarioKind::kFourQubitWeak:
      return "four_qubit_weak";
    case ScenarioKind::kClosedFormFourQubit:
      return "closed_form_four_qubit";
  }
  return "?";
}

void ScenarioSpec::validate() const {
  times.validate();
  if (kind == ScenarioKind::kClosedFormFourQubit) {
    require(g > 0.0 && J > 0.0, "closed-form couplings must be positive");
    return;
  }
  require(oracle_tolerance > 0.0 && psd_tolerance >= 0.0, "tolerances must be positive");
  const int n = network.total_sites();
  require(n >= 1, "network has no sites");
  auto check = [n](const std::vector<Site>& s, std::size_t count, const char* what) {
    require(s.size() == count, std::string(what) + " must list " +
                                   std::to_string(count) + " site(s)");
    for (std::size_t a = 0; a < s.size(); ++a) {
      require(s[a] >= 0 && s[a] < n, std::string(what) + " site out of range");
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        require(s[a] != s[b], std::string(what) + " sites must be distinct");
      }
    }
  };
  switch (kind) {
    case ScenarioKind::kQst:
    case ScenarioKind::kDistributeSingle:
    case ScenarioKind::kDistributeDual:
      check(senders, 1, "senders");
      check(receivers, 1, "receivers");
      break;
    case ScenarioKind::kTwoQubitTransfer:
      check(senders, 2, "senders");
      check(receivers, 2, "receivers");
      break;
    case ScenarioKind::kStorage:
      check(senders, 2, "senders");
      check(receivers, 2, "receivers");
      require(senders == receivers, "storage needs receivers equal to senders");
      break;
    case ScenarioKind::kWeakPair:
      require(network.shape == NetworkSpec::Shape::kWeakEnds,
              "weak_pair needs the weak_ends network shape");
      check(senders, 1, "senders");
      check(receivers, 2, "receivers");
      break;
    case ScenarioKind::kFourQubitWeak:
      require(network.shape == NetworkSpec::Shape::kDimerWire,
              "four_qubit_weak needs the dimer_wire network shape");
      check(senders, 4, "senders");
      check(receivers, 4, "receivers");
      break;
    case ScenarioKind::kClosedFormFourQubit:
      break;
  }
}

// ---------------------------------------------------------------------------
// Results

bool Diagnostics::passed(double oracle_tolerance, double psd_tolerance) const {
  if (oracle_checked && !(max_oracle_distance < oracle_tolerance)) return false;
  if (cptp_checked && (min_choi_eigenvalue < -psd_tolerance ||
                       max_trace_deviation > tol::kUnitarity)) {
    return false;
  }
  return true;
}

std::size_t ScenarioResult::column(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return c;
  }
  throw std::out_of_range("no column named '" + std::string(name) + "'");
}

std::vector<double> ScenarioResult::column_values(std::string_view name) const {
  const auto c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

void ScenarioResult::add_column(std::string name, bool is_measure) {
  require(rows.empty(), "columns must be declared before rows");
  columns.push_back(std::move(name));
  measure.push_back(is_measure);
}

void ScenarioResult::add_row(std::vector<double> row) {
  require(row.size() == columns.size(), "row width does not match the columns");
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (measure[c]) row[c] = clip_measure(row[c], columns[c]);
  }
  rows.push_back(std::move(row));
}

ScenarioResult run(const ScenarioSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ScenarioKind::kQst:
      return run_qst(spec);
    case ScenarioKind::kDistributeSingle:
      return run_distribute_single(spec);
    case ScenarioKind::kDistributeDual:
      return run_distribute_dual(spec);
    case ScenarioKind::kTwoQubitTransfer:
    case ScenarioKind::kStorage:
      return run_two_qubit(spec);
    case ScenarioKind::kWeakPair:
      return run_weak_pair(spec);
    case ScenarioKind::kFourQubitWeak:
      return run_four_qubit_weak(spec);
    case ScenarioKind::kClosedFormFourQubit:
      return run_closed_form(spec);
  }
  throw std::logic_error("unhandled scenario kind");
}

// ---------------------------------------------------------------------------
// Four-qubit closed forms

CVector closed_form_four_qubit(double g, double J, double t,
                               FourQubitInitial initial) {
  require(g > 0.0 && J > 0.0, "couplings must be positive");
  require(std::isfinite(t), "time must be finite");
  const double theta = g * g * t / J;
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex i(0.0, 1.0);
  CVector psi = CVector::Zero(16);
  if (initial == FourQubitInitial::k1100) {
    psi(0b0011) = (1.0 - c) / 2.0;
    psi(0b0101) = i * s / 2.0;
    psi(0b1010) = -i * s / 2.0;
    psi(0b1100) = (1.0 + c) / 2.0;
  } else {
    const double C = std::cos(2.0 * J * t), S = std::sin(2.0 * J * t);
    psi(0b1010) = (C + c) / 2.0;
    psi(0b0101) = (C - c) / 2.0;
    psi(0b1001) = -i * S / 2.0;
    psi(0b0110) = -i * S / 2.0;
    psi(0b1100) = -i * s / 2.0;
    psi(0b0011) = i * s / 2.0;
  }
  return psi;
}

std::vector<TimeGrid> four_qubit_windows(double g, double J, int points,
                                         std::optional<double> width) {
  require(g > 0.0 && J > 0.0, "couplings must be positive");
  const double w = width.value_or(M_PI / J);
  require(w > 0.0, "window width must be positive");
  const double unit = J / (g * g);
  std::vector<TimeGrid> out;
  for (double start : {0.0, M_PI / 4.0 * unit, M_PI / 2.0 * unit}) {
    out.push_back(TimeGrid::linspace(start, start + w, points));
  }
  return out;
}

ScenarioResult four_qubit_measure_sweep(double g, double J,
                                        std::span<const TimeGrid> windows) {
  require(!windows.empty(), "need at least one time window");
  ScenarioResult r;
  r.add_column("window", false);
  add_four_qubit_columns(r);
  r.add_column("exclusive_flag", false);
  const std::size_t a1b2 = r.column("c_a1b2"), a2b1 = r.column("c_a2b1");
  const std::size_t a1b1 = r.column("c_a1b1"), a2b2 = r.column("c_a2b2");
  const std::size_t c4 = r.column("c4"), tau3 = r.column("tau3_max");
  for (std::size_t w = 0; w < windows.size(); ++w) {
    windows[w].validate();
    for (double t : windows[w].times) {
      std::vector<double> row{static_cast<double>(w + 1)};
      const auto m = four_qubit_row(g, J, t, FourQubitInitial::k1010);
      row.insert(row.end(), m.begin(), m.end());
      if (row[a1b1] > tol::kMeasureWindow || row[a2b2] > tol::kMeasureWindow) {
        throw std::runtime_error("C_A1B1 or C_A2B2 nonzero at t = " + std::to_string(t));
      }
      // Only the intra-pair concurrences survive, no three-way tangle, and
      // the four-qubit concurrence is nonzero.
      const double cross = std::max({row[a1b2], row[a2b1], row[a1b1], row[a2b2]});
      const bool exclusive = cross < 1e-6 && row[tau3] < 1e-8 && row[c4] > 1e-6;
      row.push_back(exclusive ? 1.0 : 0.0);
      r.add_row(std::move(row));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "p") return SweepAxis::kP;
  if (name == "g") return SweepAxis::kG;
  if (name == "J") return SweepAxis::kJ;
  if (name == "delta") return SweepAxis::kDelta;
  if (name == "h") return SweepAxis::kH;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected p, g, J, delta, h)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kP:
      return "p";
    case SweepAxis::kG:
      return "g";
    case SweepAxis::kJ:
      return "J";
    case SweepAxis::kDelta:
      return "delta";
    case SweepAxis::kH:
      return "h";
  }
  return "?";
}

std::vector<ScenarioResult> sweep(const ScenarioSpec& spec, SweepAxis axis,
                                  std::span<const double> values) {
  require(!values.empty(), "sweep grid is empty");
  if (axis == SweepAxis::kP) {
    require(spec.input.kind == InputStateSpec::Kind::kWerner,
            "a p sweep needs a Werner input state");
  }
  std::vector<ScenarioResult> out;
  out.reserve(values.size());
  for (double v : values) {
    ScenarioSpec s = spec;
    switch (axis) {
      case SweepAxis::kP:
        s.input.p = v;
        break;
      case SweepAxis::kG:
        s.network.weak_coupling = v;
        s.g = v;
        break;
      case SweepAxis::kJ:
        s.network.coupling = v;
        s.J = v;
        break;
      case SweepAxis::kDelta:
        s.network.anisotropy = v;
        break;
      case SweepAxis::kH:
        s.network.field = v;
        break;
    }
    ScenarioResult r = run(s);
    ScenarioResult tagged;
    tagged.add_column(std::string(sweep_axis_name(axis)), false);
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      tagged.add_column(r.columns[c], r.measure[c]);
    }
    for (auto& row : r.rows) {
      row.insert(row.begin(), v);
      tagged.add_row(std::move(row));
    }
    tagged.peak = r.peak;
    tagged.diagnostics = r.diagnostics;
    tagged.notes = r.notes;
    out.push_back(std::move(tagged));
  }
  return out;
}

ScenarioResult merge(std::span<const ScenarioResult> parts) {
  require(!parts.empty(), "nothing to merge");
  ScenarioResult out;
  for (std::size_t c = 0; c < parts.front().columns.size(); ++c) {
    out.add_column(parts.front().columns[c], parts.front().measure[c]);
  }
  Diagnostics& d = out.diagnostics;
  bool first_cptp = true;
  for (const auto& p : parts) {
    require(p.columns == out.columns, "cannot merge results with different columns");
    for (const auto& row : p.rows) out.rows.push_back(row);
    const auto& q = p.diagnostics;
    if (q.oracle_checked) {
      d.oracle_checked = true;
      d.max_oracle_distance = std::max(d.max_oracle_distance, q.max_oracle_distance);
    }
    if (q.cptp_checked) {
      d.min_choi_eigenvalue = first_cptp ? q.min_choi_eigenvalue
                                         : std::min(d.min_choi_eigenvalue,
                                                    q.min_choi_eigenvalue);
      first_cptp = false;
      d.cptp_checked = true;
      d.max_trace_deviation = std::max(d.max_trace_deviation, q.max_trace_deviation);
    }
    if (q.closed_form_compared) {
      d.closed_form_compared = true;
      d.max_closed_form_distance =
          std::max(d.max_closed_form_distance, q.max_closed_form_distance);
    }
    if (p.peak && (!out.peak || p.peak->value > out.peak->value)) out.peak = p.peak;
    for (const auto& n : p.notes) {
      if (std::find(out.notes.begin(), out.notes.end(), n) == out.notes.end()) {
        out.notes.push_back(n);
      }
    }
  }
  return out;
}

}  // namespace spinmap
