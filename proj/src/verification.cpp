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

#include "spinmap/verification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "spinmap/oracle.hpp"
#include "spinmap/quantum_map.hpp"
#include "spinmap/random.hpp"
#include "spinmap/spin_network.hpp"

namespace spinmap {

namespace {

CheckResult make(std::string name, double witness, double threshold,
                 std::string detail = {}) {
  return CheckResult{std::move(name), witness <= threshold, witness, threshold,
                     std::move(detail)};
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<CheckResult> verify_invariants(const VerifyOptions& options) {
  if (options.sites < 3 || options.sites > 10) {
    throw std::invalid_argument("verify supports 3..10 sites");
  }
  if (options.samples < 1) throw std::invalid_argument("need at least one sample");
  random::Rng rng(options.seed);
  const int n = options.sites;
  const SpinNetwork net = random::network(rng, n);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  const int max_k = std::min(n, 3);

  std::vector<SectorPropagator> sectors;
  for (int k = 0; k <= max_k; ++k) sectors.emplace_back(net, k);
  std::vector<double> times;
  for (int s = 0; s < options.samples; ++s) times.push_back(time(rng));

  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (int k = 0; k <= max_k; ++k) {
      worst = std::max(worst, build_sector_hamiltonian(net, k).hermiticity_deviation());
    }
    out.push_back(make("sector_hermiticity", worst, tol::kHermitian));
  }
  {
    double unit = 0.0, complete = 0.0;
    for (const auto& p : sectors) {
      for (double t : times) {
        const auto table = p.at(t);
        unit = std::max(unit, table.unitarity_deviation());
        complete = std::max(complete, table.completeness_deviation());
      }
    }
    out.push_back(make("sector_unitarity", unit, tol::kUnitarity));
    out.push_back(make("column_completeness", complete, tol::kUnitarity));
  }

  const oracle::FullEvolution full(net);
  {
    double worst = 0.0, leak = 0.0;
    for (double t : times) {
      const CMatrix u = full.unitary(t);
      for (int k = 0; k <= n; ++k) {
        const auto table = k <= max_k ? sectors[k].at(t) : amplitudes(net, k, t);
        const auto& sec = table.sector;
        for (std::size_t a = 0; a < sec.dimension(); ++a)
          for (std::size_t b = 0; b < sec.dimension(); ++b)
            worst = std::max(worst,
                             std::abs(u(oracle::basis_index(sec.mask(a), n),
                                        oracle::basis_index(sec.mask(b), n)) -
                                      table.amplitudes(a, b)));
      }
      for (Eigen::Index r = 0; r < u.rows(); ++r)
        for (Eigen::Index c = 0; c < u.cols(); ++c)
          if (std::popcount(static_cast<std::uint64_t>(r)) !=
              std::popcount(static_cast<std::uint64_t>(c)))
            leak = std::max(leak, std::abs(u(r, c)));
    }
    out.push_back(make("block_consistency", worst, 1e-9));
    out.push_back(make("sector_leakage", leak, 1e-10));
  }
  {
    double drift = 0.0;
    for (double t : times) {
      const CVector psi = random::pure_state(rng, Eigen::Index{1} << n);
      const CVector evolved = full.evolve(psi, t);
      drift = std::max(drift, std::abs(oracle::magnetization_expectation(evolved) -
                                       oracle::magnetization_expectation(psi)));
    }
    out.push_back(make("magnetization_conservation", drift, 1e-10));
  }

  double min_eig = 0.0, trace_dev = 0.0, herm_dev = 0.0;
  double oracle1 = 0.0, oracle2 = 0.0, oracle_generic = 0.0;
  double table_dev = 0.0, zero_pattern = 0.0, round_trip = 0.0;
  auto record_map = [&](const Superoperator& map) {
    const auto v = is_cptp(map);
    min_eig = std::min(min_eig, v.min_eigenvalue);
    trace_dev = std::max(trace_dev, v.trace_deviation);
    herm_dev = std::max(herm_dev, map.hermiticity_preservation_deviation());
  };

  for (double t : times) {
    const auto k1 = relative_to_vacuum(sectors[1].at(t), net);
    const auto k2 = relative_to_vacuum(sectors[2].at(t), net);

    // One-qubit map.
    const auto s1 = random::distinct_sites(rng, n, 2);
    const Complex f = single_amplitude(k1, s1[0], s1[1]);
    const auto map1 = superop_from_kraus(one_qubit_kraus(f));
    record_map(map1);
    {
      const DensityMatrix rho = random::density(rng, 2);
      const Site snd[] = {s1[0]};
      const Site rcv[] = {s1[1]};
      oracle1 = std::max(oracle1, trace_distance(apply(map1, rho).matrix(),
                                                 oracle::reduced_output(full, rho, snd, rcv, t)
                                                     .matrix()));
    }

    // Two-qubit map.
    const auto snd = random::distinct_sites(rng, n, 2);
    const auto rcv = random::distinct_sites(rng, n, 2);
    const SitePair sp{snd[0], snd[1]}, rp{rcv[0], rcv[1]};
    const auto kraus2 = two_qubit_kraus(k1, k2, sp, rp);
    const auto map2 = superop_from_kraus(kraus2);
    record_map(map2);
    table_dev = std::max(
        table_dev, max_abs(CMatrix(two_qubit_map_elements(k1, k2, sp, rp).matrix() -
                                   map2.matrix())));
    zero_pattern = std::max(zero_pattern, u1_selection_violation(map2));
    {
      const DensityMatrix rho = random::density(rng, 4);
      oracle2 = std::max(oracle2, trace_distance(apply(map2, rho).matrix(),
                                                 oracle::reduced_output(full, rho, snd, rcv, t)
                                                     .matrix()));
    }
    {
      const auto back = superop_from_kraus(kraus_from_choi(choi(map2)));
      round_trip = std::max(round_trip, max_abs(CMatrix(back.matrix() - map2.matrix())));
    }

    // Generic map: two senders onto three receivers through all sectors.
    const auto rcv3 = random::distinct_sites(rng, n, 3);
    const ReducedMapBuilder builder(net, snd, rcv3);
    const auto map3 = builder.superoperator(t);
    record_map(map3);
    zero_pattern = std::max(zero_pattern, u1_selection_violation(map3));
    {
      const DensityMatrix rho = random::density(rng, 4);
      oracle_generic =
          std::max(oracle_generic,
                   trace_distance(apply(map3, rho).matrix(),
                                  oracle::reduced_output(full, rho, snd, rcv3, t).matrix()));
    }
  }

  out.push_back(make("choi_positivity", -min_eig, tol::kPsdFloor,
                     "witness is minus the smallest Choi eigenvalue"));
  out.push_back(make("trace_preservation", trace_dev, tol::kUnitarity));
  out.push_back(make("hermiticity_preservation", herm_dev, tol::kUnitarity));
  out.push_back(make("oracle_equivalence_one_qubit", oracle1, options.oracle_tolerance));
  out.push_back(make("oracle_equivalence_two_qubit", oracle2, options.oracle_tolerance));
  out.push_back(make("oracle_equivalence_generic", oracle_generic, options.oracle_tolerance));
  out.push_back(make("element_table_vs_kraus", table_dev, 1e-10));
  out.push_back(make("u1_zero_pattern", zero_pattern, 0.0));
  out.push_back(make("kraus_choi_round_trip", round_trip, 1e-9));
  return out;
}

}  // namespace spinmap
