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
#include "spinmap/random.hpp"
#include "spinmap/spin_network.hpp"

using namespace spinmap;

TEST_CASE("network validation", "[spin_network]") {
  RMatrix xy = RMatrix::Zero(3, 3);
  xy(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(SpinNetwork(xy, RMatrix::Zero(3, 3), RVector::Zero(3)),
                  std::invalid_argument);
  RMatrix diag = RMatrix::Identity(3, 3);
  CHECK_THROWS_AS(SpinNetwork(diag, RMatrix::Zero(3, 3), RVector::Zero(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpinNetwork(RMatrix::Zero(3, 3), RMatrix::Zero(3, 3), RVector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("sector enumeration", "[spin_network]") {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 0; k <= n; ++k) {
      ExcitationSector s(n, k);
      REQUIRE(s.dimension() == binomial(n, k));
      for (std::size_t a = 0; a < s.dimension(); ++a) {
        CHECK(std::popcount(s.mask(a)) == k);
        CHECK(s.index_of(s.mask(a)) == a);
      }
    }
  }
  ExcitationSector s(4, 2);
  CHECK_THROWS_AS(s.index_of(SiteMask{0b111}), std::out_of_range);
  CHECK_THROWS(ExcitationSector(3, 4));
  const std::vector<Site> repeated{1, 1};
  CHECK_THROWS_AS(mask_of(repeated), std::invalid_argument);
}

TEST_CASE("sector Hamiltonians are symmetric and propagators unitary", "[spin_network]") {
  random::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 6;
    SpinNetwork net = random::network(rng, n);
    for (int k = 0; k <= std::min(n, 3); ++k) {
      auto h = build_sector_hamiltonian(net, k);
      CHECK(h.hermiticity_deviation() <= 1e-12);
      auto table = amplitudes(net, k, 0.37 * (trial + 1));
      CHECK(table.unitarity_deviation() <= 1e-10);
      CHECK(table.completeness_deviation() <= 1e-10);
    }
  }
}

TEST_CASE("sector blocks agree with the dense reference", "[spin_network]") {
  random::Rng rng(5);
  SpinNetwork net = random::network(rng, 6);
  const double t = 1.3;
  CMatrix u = reference::propagator(reference::hamiltonian(net), t);
  for (int k = 0; k <= 6; ++k) {
    auto table = amplitudes(net, k, t);
    const auto& sec = table.sector;
    for (std::size_t a = 0; a < sec.dimension(); ++a) {
      for (std::size_t b = 0; b < sec.dimension(); ++b) {
        long ra = 0, rb = 0;
        for (int s = 0; s < 6; ++s) {
          if (sec.mask(a) >> s & 1) ra |= 1L << (5 - s);
          if (sec.mask(b) >> s & 1) rb |= 1L << (5 - s);
        }
        CHECK(std::abs(table.amplitudes(a, b) - u(ra, rb)) < 1e-10);
      }
    }
  }
}

TEST_CASE("two-site chain transfers perfectly at pi/(4J)", "[spin_network]") {
  const double J = 0.8;
  SpinNetwork net = SpinNetwork::uniform_chain(2, J);
  auto table = amplitudes(net, 1, std::numbers::pi / (4.0 * J));
  CHECK(std::abs(std::abs(single_amplitude(table, 0, 1)) - 1.0) < 1e-12);
  CHECK(std::abs(single_amplitude(table, 0, 0)) < 1e-12);
}

TEST_CASE("vacuum-relative amplitudes put 1 in the empty sector", "[spin_network]") {
  random::Rng rng(9);
  SpinNetwork net = random::network(rng, 5);
  auto raw = amplitudes(net, 0, 2.1);
  auto rel = relative_to_vacuum(raw, net);
  CHECK(std::abs(rel.amplitudes(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(raw.amplitudes(0, 0) - std::polar(1.0, -net.vacuum_energy() * 2.1)) < 1e-12);
}

TEST_CASE("free-fermion pair amplitudes factor into determinants", "[spin_network]") {
  random::Rng rng(13);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 4 + trial;
    std::vector<double> bonds(n - 1);
    for (auto& b : bonds) b = u(rng);
    RVector h(n);
    for (int s = 0; s < n; ++s) h(s) = u(rng) - 0.8;
    SpinNetwork chain = SpinNetwork::chain(bonds);
    SpinNetwork net(chain.xy_couplings(), chain.zz_couplings(), h);
    REQUIRE(net.is_free_fermion_chain());
    const double t = 0.9 + trial;
    auto one = amplitudes(net, 1, t);
    auto two = amplitudes(net, 2, t);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            worst = std::max(worst, std::abs(determinant_pair_amplitude(net, one, i, j, a, b) -
                                             pair_amplitude(two, i, j, a, b)));
    CHECK(worst < 1e-9);
  }
  random::Rng rng2(1);
  SpinNetwork dense = random::network(rng2, 5);
  auto one = amplitudes(dense, 1, 1.0);
  CHECK_THROWS_AS(determinant_pair_amplitude(dense, one, 0, 1, 2, 3), std::invalid_argument);
}

TEST_CASE("non-finite time is rejected", "[spin_network]") {
  SpinNetwork net = SpinNetwork::uniform_chain(3, 1.0);
  SectorPropagator p(net, 1);
  CHECK_THROWS_AS(p.at(std::nan("")), std::invalid_argument);
}
