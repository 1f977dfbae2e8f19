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

#include "spinmap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spinmap/csv.hpp"

namespace spinmap {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void require_map(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) fail(where + " must be a mapping");
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& where) {
  require_map(node, where);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) fail(where + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(where + " has the wrong type ('" + node.Scalar() + "')");
  }
}

template <typename T>
T value_or(const YAML::Node& parent, const std::string& key, T fallback,
           const std::string& where) {
  const YAML::Node n = parent[key];
  return n ? scalar<T>(n, where + "." + key) : fallback;
}

std::vector<double> doubles(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) fail(where + " must be a list");
  std::vector<double> out;
  for (std::size_t k = 0; k < node.size(); ++k) out.push_back(scalar<double>(node[k], where));
  return out;
}

std::vector<Site> sites(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) fail(where + " must be a list of site indices");
  std::vector<Site> out;
  for (std::size_t k = 0; k < node.size(); ++k) out.push_back(scalar<int>(node[k], where));
  return out;
}

RMatrix real_matrix(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence() || node.size() == 0) fail(where + " must be a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(node.size());
  RMatrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = doubles(node[static_cast<std::size_t>(r)], where);
    if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) fail(where + " rows differ in length");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Complex complex_value(const YAML::Node& node, const std::string& where) {
  if (node.IsScalar()) return scalar<double>(node, where);
  const auto v = doubles(node, where);
  if (v.size() != 2) fail(where + " must be a number or [re, im]");
  return {v[0], v[1]};
}

NetworkSpec parse_network(const YAML::Node& node, const std::string& where) {
  check_keys(node, {"shape", "sites", "coupling", "weak_coupling", "dimer_coupling",
                    "anisotropy", "field", "xy", "zz", "fields"},
             where);
  NetworkSpec n;
  n.shape = parse_network_shape(value_or<std::string>(node, "shape", "chain", where));
  n.sites = value_or<int>(node, "sites", n.sites, where);
  n.coupling = value_or<double>(node, "coupling", n.coupling, where);
  n.weak_coupling = value_or<double>(node, "weak_coupling", n.weak_coupling, where);
  n.dimer_coupling = value_or<double>(node, "dimer_coupling", n.dimer_coupling, where);
  n.anisotropy = value_or<double>(node, "anisotropy", n.anisotropy, where);
  n.field = value_or<double>(node, "field", n.field, where);
  if (n.shape == NetworkSpec::Shape::kCustom) {
    if (!node["xy"] || !node["fields"]) fail(where + ": custom networks need xy and fields");
    n.xy = real_matrix(node["xy"], where + ".xy");
    const auto f = doubles(node["fields"], where + ".fields");
    n.fields = Eigen::Map<const RVector>(f.data(), static_cast<Eigen::Index>(f.size()));
    n.zz = node["zz"] ? real_matrix(node["zz"], where + ".zz")
                      : RMatrix::Zero(n.xy.rows(), n.xy.cols());
    n.sites = static_cast<int>(n.fields.size());
  } else if (node["xy"] || node["zz"] || node["fields"]) {
    fail(where + ": xy, zz and fields are only allowed for the custom shape");
  }
  return n;
}

InputStateSpec parse_input(const YAML::Node& node) {
  const std::string where = "input";
  check_keys(node, {"kind", "bell", "p", "x", "bits", "matrix"}, where);
  InputStateSpec in;
  in.kind = parse_input_kind(value_or<std::string>(node, "kind", "bell", where));
  in.bell = parse_bell_state(value_or<std::string>(node, "bell", "psi+", where));
  in.p = value_or<double>(node, "p", in.p, where);
  in.bits = value_or<std::string>(node, "bits", "", where);
  if (const auto x = node["x"]) {
    check_keys(x, {"p00", "p11", "p22", "p33", "p03", "p12"}, "input.x");
    in.x.p00 = value_or<double>(x, "p00", 0.0, "input.x");
    in.x.p11 = value_or<double>(x, "p11", 0.0, "input.x");
    in.x.p22 = value_or<double>(x, "p22", 0.0, "input.x");
    in.x.p33 = value_or<double>(x, "p33", 0.0, "input.x");
    if (x["p03"]) in.x.p03 = complex_value(x["p03"], "input.x.p03");
    if (x["p12"]) in.x.p12 = complex_value(x["p12"], "input.x.p12");
  }
  if (const auto m = node["matrix"]) {
    check_keys(m, {"re", "im"}, "input.matrix");
    if (!m["re"]) fail("input.matrix needs re");
    const RMatrix re = real_matrix(m["re"], "input.matrix.re");
    const RMatrix im = m["im"] ? real_matrix(m["im"], "input.matrix.im")
                               : RMatrix::Zero(re.rows(), re.cols());
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      fail("input.matrix re and im differ in shape");
    }
    in.matrix = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  }
  if (in.kind == InputStateSpec::Kind::kBasis && in.bits.empty()) fail("input.bits is required");
  if (in.kind == InputStateSpec::Kind::kMatrix && in.matrix.size() == 0) {
    fail("input.matrix is required");
  }
  if (in.kind == InputStateSpec::Kind::kXState && !node["x"]) fail("input.x is required");
  return in;
}

TimeGrid parse_times(const YAML::Node& node) {
  check_keys(node, {"start", "stop", "points", "values"}, "times");
  if (node["values"]) {
    if (node["start"] || node["stop"] || node["points"]) {
      fail("times: give either values or start/stop/points");
    }
    TimeGrid g;
    g.times = doubles(node["values"], "times.values");
    return g;
  }
  if (!node["start"] || !node["stop"] || !node["points"]) {
    fail("times needs start, stop and points");
  }
  return TimeGrid::linspace(scalar<double>(node["start"], "times.start"),
                            scalar<double>(node["stop"], "times.stop"),
                            scalar<int>(node["points"], "times.points"));
}

void default_sites(ScenarioSpec& s, bool have_senders, bool have_receivers) {
  const int n = s.network.total_sites();
  if (s.kind == ScenarioKind::kWeakPair) {
    if (!have_senders) s.senders = {0};
    if (!have_receivers) s.receivers = {0, n - 1};
  } else if (s.kind == ScenarioKind::kFourQubitWeak) {
    // Qubit order A1 A2 B1 B2.
    if (!have_senders) s.senders = {0, 1, n - 1, n - 2};
    if (!have_receivers) s.receivers = s.senders;
  }
}

InputStateSpec default_input(ScenarioKind kind) {
  InputStateSpec in;
  switch (kind) {
    case ScenarioKind::kQst:
    case ScenarioKind::kWeakPair:
      in.kind = InputStateSpec::Kind::kBasis;
      in.bits = "1";
      break;
    case ScenarioKind::kFourQubitWeak:
      in.kind = InputStateSpec::Kind::kBasis;
      in.bits = "1010";
      break;
    default:
      break;
  }
  return in;
}

RunConfig parse_node(const YAML::Node& root) {
  check_keys(root, {"scenario", "network", "second_rail", "senders", "receivers",
                    "input", "times", "four_qubit", "checks", "tolerances", "peak",
                    "sweep", "output"},
             "config");
  RunConfig cfg;
  ScenarioSpec& s = cfg.scenario;
  if (!root["scenario"]) fail("config needs a scenario");
  s.kind = parse_scenario_kind(scalar<std::string>(root["scenario"], "scenario"));
  if (root["network"]) s.network = parse_network(root["network"], "network");
  if (root["second_rail"]) s.second_rail = parse_network(root["second_rail"], "second_rail");
  if (root["senders"]) s.senders = sites(root["senders"], "senders");
  if (root["receivers"]) s.receivers = sites(root["receivers"], "receivers");
  default_sites(s, static_cast<bool>(root["senders"]), static_cast<bool>(root["receivers"]));
  s.input = root["input"] ? parse_input(root["input"]) : default_input(s.kind);
  if (!root["times"]) fail("config needs times");
  s.times = parse_times(root["times"]);
  if (const auto q = root["four_qubit"]) {
    check_keys(q, {"g", "J", "initial"}, "four_qubit");
    s.g = value_or<double>(q, "g", s.g, "four_qubit");
    s.J = value_or<double>(q, "J", s.J, "four_qubit");
    s.initial = parse_four_qubit_initial(
        value_or<std::string>(q, "initial", std::string(four_qubit_initial_name(s.initial)),
                              "four_qubit"));
  }
  if (const auto c = root["checks"]) {
    check_keys(c, {"oracle", "cptp"}, "checks");
    s.oracle_check = value_or<bool>(c, "oracle", s.oracle_check, "checks");
    s.cptp_check = value_or<bool>(c, "cptp", s.cptp_check, "checks");
  }
  if (const auto t = root["tolerances"]) {
    check_keys(t, {"oracle", "psd"}, "tolerances");
    s.oracle_tolerance = value_or<double>(t, "oracle", s.oracle_tolerance, "tolerances");
    s.psd_tolerance = value_or<double>(t, "psd", s.psd_tolerance, "tolerances");
  }
  if (const auto p = root["peak"]) {
    check_keys(p, {"refine"}, "peak");
    s.refine_peak = value_or<bool>(p, "refine", s.refine_peak, "peak");
  }
  if (const auto w = root["sweep"]) {
    check_keys(w, {"axis", "values"}, "sweep");
    if (!w["axis"] || !w["values"]) fail("sweep needs axis and values");
    SweepSpec sw;
    sw.axis = parse_sweep_axis(scalar<std::string>(w["axis"], "sweep.axis"));
    sw.values = doubles(w["values"], "sweep.values");
    if (sw.values.empty()) fail("sweep.values is empty");
    cfg.sweep = std::move(sw);
  }
  cfg.output = value_or<std::string>(root, "output", "", "config");
  s.validate();
  s.input.build();
  return cfg;
}

// ---------------------------------------------------------------------------
// Emission

void emit_double(YAML::Emitter& e, double v) { e << format_double(v); }

void emit_doubles(YAML::Emitter& e, const std::vector<double>& v) {
  e << YAML::Flow << YAML::BeginSeq;
  for (double x : v) emit_double(e, x);
  e << YAML::EndSeq;
}

void emit_matrix(YAML::Emitter& e, const RMatrix& m) {
  e << YAML::BeginSeq;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    emit_doubles(e, row);
  }
  e << YAML::EndSeq;
}

void emit_complex(YAML::Emitter& e, Complex z) { emit_doubles(e, {z.real(), z.imag()}); }

void emit_network(YAML::Emitter& e, const NetworkSpec& n) {
  e << YAML::BeginMap;
  e << YAML::Key << "shape" << YAML::Value << std::string(network_shape_name(n.shape));
  if (n.shape == NetworkSpec::Shape::kCustom) {
    e << YAML::Key << "xy" << YAML::Value;
    emit_matrix(e, n.xy);
    e << YAML::Key << "zz" << YAML::Value;
    emit_matrix(e, n.zz);
    e << YAML::Key << "fields" << YAML::Value;
    emit_doubles(e, std::vector<double>(n.fields.data(), n.fields.data() + n.fields.size()));
  } else {
    e << YAML::Key << "sites" << YAML::Value << n.sites;
    const std::pair<const char*, double> fields[] = {
        {"coupling", n.coupling},       {"weak_coupling", n.weak_coupling},
        {"dimer_coupling", n.dimer_coupling}, {"anisotropy", n.anisotropy},
        {"field", n.field}};
    for (const auto& [k, v] : fields) {
      e << YAML::Key << k << YAML::Value;
      emit_double(e, v);
    }
  }
  e << YAML::EndMap;
}

void emit_sites(YAML::Emitter& e, const std::vector<Site>& s) {
  e << YAML::Flow << YAML::BeginSeq;
  for (Site x : s) e << x;
  e << YAML::EndSeq;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& ex) {
    fail(std::string("malformed YAML: ") + ex.what());
  }
  try {
    return parse_node(root);
  } catch (const ConfigError&) {
    throw;
  } catch (const YAML::Exception& ex) {
    fail(std::string("invalid configuration: ") + ex.what());
  } catch (const std::exception& ex) {
    fail(std::string("invalid configuration: ") + ex.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) fail("cannot read config file " + path.string());
  std::stringstream s;
  s << f.rdbuf();
  return parse_config(s.str());
}

std::string serialize_config(const RunConfig& config) {
  const ScenarioSpec& s = config.scenario;
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "scenario" << YAML::Value << std::string(scenario_kind_name(s.kind));
  e << YAML::Key << "network" << YAML::Value;
  emit_network(e, s.network);
  if (s.second_rail) {
    e << YAML::Key << "second_rail" << YAML::Value;
    emit_network(e, *s.second_rail);
  }
  e << YAML::Key << "senders" << YAML::Value;
  emit_sites(e, s.senders);
  e << YAML::Key << "receivers" << YAML::Value;
  emit_sites(e, s.receivers);

  e << YAML::Key << "input" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << std::string(input_kind_name(s.input.kind));
  switch (s.input.kind) {
    case InputStateSpec::Kind::kBell:
      e << YAML::Key << "bell" << YAML::Value << std::string(bell_state_name(s.input.bell));
      break;
    case InputStateSpec::Kind::kWerner:
      e << YAML::Key << "bell" << YAML::Value << std::string(bell_state_name(s.input.bell));
      e << YAML::Key << "p" << YAML::Value;
      emit_double(e, s.input.p);
      break;
    case InputStateSpec::Kind::kXState: {
      const XState& x = s.input.x;
      e << YAML::Key << "x" << YAML::Value << YAML::BeginMap;
      const std::pair<const char*, double> pops[] = {
          {"p00", x.p00}, {"p11", x.p11}, {"p22", x.p22}, {"p33", x.p33}};
      for (const auto& [k, v] : pops) {
        e << YAML::Key << k << YAML::Value;
        emit_double(e, v);
      }
      e << YAML::Key << "p03" << YAML::Value;
      emit_complex(e, x.p03);
      e << YAML::Key << "p12" << YAML::Value;
      emit_complex(e, x.p12);
      e << YAML::EndMap;
      break;
    }
    case InputStateSpec::Kind::kBasis:
      e << YAML::Key << "bits" << YAML::Value << YAML::DoubleQuoted << s.input.bits;
      break;
    case InputStateSpec::Kind::kMatrix:
      e << YAML::Key << "matrix" << YAML::Value << YAML::BeginMap;
      e << YAML::Key << "re" << YAML::Value;
      emit_matrix(e, s.input.matrix.real());
      e << YAML::Key << "im" << YAML::Value;
      emit_matrix(e, s.input.matrix.imag());
      e << YAML::EndMap;
      break;
  }
  e << YAML::EndMap;

  e << YAML::Key << "times" << YAML::Value << YAML::BeginMap;
  if (s.times.range) {
    e << YAML::Key << "start" << YAML::Value;
    emit_double(e, s.times.range->start);
    e << YAML::Key << "stop" << YAML::Value;
    emit_double(e, s.times.range->stop);
    e << YAML::Key << "points" << YAML::Value << s.times.range->points;
  } else {
    e << YAML::Key << "values" << YAML::Value;
    emit_doubles(e, s.times.times);
  }
  e << YAML::EndMap;

  e << YAML::Key << "four_qubit" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "g" << YAML::Value;
  emit_double(e, s.g);
  e << YAML::Key << "J" << YAML::Value;
  emit_double(e, s.J);
  e << YAML::Key << "initial" << YAML::Value << YAML::DoubleQuoted
    << std::string(four_qubit_initial_name(s.initial));
  e << YAML::EndMap;

  e << YAML::Key << "checks" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "oracle" << YAML::Value << s.oracle_check;
  e << YAML::Key << "cptp" << YAML::Value << s.cptp_check;
  e << YAML::EndMap;
  e << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "oracle" << YAML::Value;
  emit_double(e, s.oracle_tolerance);
  e << YAML::Key << "psd" << YAML::Value;
  emit_double(e, s.psd_tolerance);
  e << YAML::EndMap;
  e << YAML::Key << "peak" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "refine" << YAML::Value << s.refine_peak;
  e << YAML::EndMap;

  if (config.sweep) {
    e << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "axis" << YAML::Value
      << std::string(sweep_axis_name(config.sweep->axis));
    e << YAML::Key << "values" << YAML::Value;
    emit_doubles(e, config.sweep->values);
    e << YAML::EndMap;
  }
  if (!config.output.empty()) {
    e << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << config.output;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace spinmap
