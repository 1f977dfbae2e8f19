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
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "spinmap/config.hpp"
#include "spinmap/csv.hpp"

using namespace spinmap;

namespace {

const char* kFull = R"(scenario: distribute_dual
network: {shape: chain, sites: 4, coupling: 0.9, anisotropy: 0.1, field: -0.2}
second_rail: {shape: chain, sites: 5, coupling: 1.1}
senders: [0]
receivers: [3]
input:
  kind: xstate
  x: {p00: 0.1, p11: 0.4, p22: 0.3, p33: 0.2, p03: [0.05, 0.01], p12: [0.2, -0.1]}
times: {start: 0, stop: 2.5, points: 6}
checks: {oracle: true, cptp: false}
tolerances: {oracle: 1e-9, psd: 1e-10}
peak: {refine: false}
sweep: {axis: J, values: [0.5, 1, 2]}
output: dual.csv
)";

}  // namespace

TEST_CASE("config round trip is a fixed point", "[config]") {
  RunConfig a = parse_config(kFull);
  const std::string once = serialize_config(a);
  RunConfig b = parse_config(once);
  CHECK(serialize_config(b) == once);
  CHECK(b.scenario.kind == ScenarioKind::kDistributeDual);
  REQUIRE(b.scenario.second_rail.has_value());
  CHECK(b.scenario.second_rail->sites == 5);
  CHECK(b.scenario.input.x.p12 == Complex(0.2, -0.1));
  CHECK(b.scenario.times.times.size() == 6);
  CHECK(b.scenario.oracle_tolerance == 1e-9);
  REQUIRE(b.sweep.has_value());
  CHECK(b.sweep->axis == SweepAxis::kJ);
  CHECK(b.output == "dual.csv");
}

TEST_CASE("explicit time lists and custom networks round trip", "[config]") {
  const char* text = R"(scenario: qst
network:
  shape: custom
  xy: [[0, 1, 0], [1, 0, 0.5], [0, 0.5, 0]]
  fields: [0.1, 0, -0.1]
senders: [0]
receivers: [2]
input: {kind: basis, bits: "1"}
times: {values: [0, 1e-3, 0.25]}
)";
  RunConfig a = parse_config(text);
  CHECK(a.scenario.network.xy(1, 2) == 0.5);
  const std::string s = serialize_config(a);
  CHECK(serialize_config(parse_config(s)) == s);
}

TEST_CASE("config errors", "[config]") {
  CHECK_THROWS_AS(parse_config("scenario: qst\nfoo: 1\ntimes: {values: [0]}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario: qst\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario: warp\ntimes: {values: [0]}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario: qst\ntimes: {start: 0}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario: [\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario: qst\nnetwork: {sites: x}\ntimes: {values: [0]}\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config("scenario: qst\ninput: {kind: werner, p: 1.5}\ntimes: {values: [0]}\n"),
      ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/spinmap.yaml"), ConfigError);
}

TEST_CASE("number formatting", "[csv]") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS(format_double(std::numeric_limits<double>::infinity()));
  CHECK_THROWS(format_double(std::nan("")));
}

TEST_CASE("CSV output", "[csv]") {
  ScenarioResult r;
  r.add_column("t", false);
  r.add_column("c", true);
  r.add_row({0.0, 0.5});
  r.add_row({1.5, 1.0});
  CHECK(to_csv(r) == "t,c\n0,0.5\n1.5,1\n");
  CHECK_THROWS(r.add_row({1.0}));
  CHECK_THROWS(r.add_row({1.0, 1.5}));

  const auto dir = std::filesystem::temp_directory_path() / "spinmap_csv_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_csv_file(dir / "x.csv", r);
  std::ifstream in(dir / "x.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == to_csv(r));
  std::filesystem::remove_all(dir.parent_path());
}
