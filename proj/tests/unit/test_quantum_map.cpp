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
#include <vector>

#include "printed.hpp"
#include "reference.hpp"
#include "spinmap/quantum_map.hpp"
#include "spinmap/random.hpp"

using namespace spinmap;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("density matrix validation", "[quantum_map]") {
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(bad), std::invalid_argument);  // trace 2
  CMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg), std::invalid_argument);
  CMatrix nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix(nonherm), std::invalid_argument);
  auto r = DensityMatrix::from_bits("10");
  CHECK(r.dimension() == 4);
  CHECK(std::abs(r(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(DensityMatrix::maximally_mixed(4).purity() - 0.25) < 1e-15);
}

TEST_CASE("one-qubit map acts on |1><1| as amplitude damping", "[quantum_map]") {
  const Complex f(0.3, -0.4);
  auto out = apply(one_qubit_superoperator(f), DensityMatrix::from_bits("1"));
  CHECK(std::abs(out(0, 0) - (1.0 - std::norm(f))) < 1e-15);
  CHECK(std::abs(out(1, 1) - std::norm(f)) < 1e-15);
  auto zero = apply(one_qubit_superoperator(0.0), DensityMatrix::maximally_mixed(2));
  CHECK(std::abs(zero(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("one-qubit Kraus pair, closed form and printed matrix", "[quantum_map]") {
  random::Rng rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex f(u(rng), u(rng));
    auto from_kraus = superop_from_kraus(one_qubit_kraus(f));
    auto closed = one_qubit_superoperator(f);
    CHECK(max_abs(CMatrix(from_kraus.matrix()) - CMatrix(closed.matrix())) < 1e-14);
    // The printed matrix lists the conjugate coherence factors.
    CHECK(max_abs(CMatrix(closed.matrix()).conjugate() - printed::one_qubit(f)) < 1e-14);
  }
  CHECK_THROWS(one_qubit_kraus(Complex(1.2, 0.0)));
}

TEST_CASE("CPTP verdicts", "[quantum_map]") {
  auto good = is_cptp(one_qubit_superoperator(Complex(0.6, 0.8)));
  CHECK(good.cptp);
  CHECK(good.min_eigenvalue >= -1e-12);
  auto bad = is_cptp(one_qubit_superoperator(Complex(1.2, 0.0)));
  CHECK_FALSE(bad.cptp);
  CHECK(bad.min_eigenvalue < -0.1);
}

TEST_CASE("Kraus completeness is enforced", "[quantum_map]") {
  CMatrix e = CMatrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(KrausSet({e}), std::invalid_argument);
  CHECK_NOTHROW(KrausSet({e}, false));
  CHECK_THROWS(KrausSet(std::vector<CMatrix>{}));
}

TEST_CASE("Choi round trip recovers the map", "[quantum_map]") {
  random::Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto k = random::kraus(rng, 2 + trial % 3, 2 + (trial + 1) % 3, 3);
    auto a = superop_from_kraus(k);
    auto back = superop_from_kraus(kraus_from_choi(choi(a)));
    CHECK(max_abs(CMatrix(a.matrix()) - CMatrix(back.matrix())) < 1e-10);
    auto ref = reference::choi(CMatrix(a.matrix()), a.input_dim(), a.output_dim());
    CHECK(max_abs(choi(a).entries - ref) < 1e-14);
  }
}

TEST_CASE("superoperator application matches Kraus application", "[quantum_map]") {
  random::Rng rng(8);
  auto k = random::kraus(rng, 4, 2, 5);
  auto a = superop_from_kraus(k);
  auto rho = random::density(rng, 4);
  auto x = apply(a, rho);
  auto y = apply(k, rho);
  CHECK(max_abs(x.matrix() - y.matrix()) < 1e-13);
  CHECK(max_abs(apply_raw(a, rho.matrix()) - x.matrix()) < 1e-13);
  CHECK(a.trace_preservation_deviation() < 1e-12);
  CHECK(a.hermiticity_preservation_deviation() < 1e-12);
}

TEST_CASE("identity extension and tensor products", "[quantum_map]") {
  const Complex f(0.2, 0.5), g(-0.6, 0.1);
  auto ext = extend_with_identity(one_qubit_superoperator(f), IdentitySide::kLeft);
  CHECK(max_abs(CMatrix(ext.matrix()).conjugate() - printed::extended_one_qubit(f)) < 1e-14);
  auto both = tensor(one_qubit_superoperator(f), one_qubit_superoperator(g));
  CHECK(max_abs(CMatrix(both.matrix()).conjugate() - printed::dual_rail(f, g)) < 1e-14);
  auto kt = superop_from_kraus(tensor(one_qubit_kraus(f), one_qubit_kraus(g)));
  CHECK(max_abs(CMatrix(kt.matrix()) - CMatrix(both.matrix())) < 1e-14);
  auto right = extend_with_identity(one_qubit_superoperator(f), IdentitySide::kRight);
  auto explicit_right = tensor(one_qubit_superoperator(f), Superoperator::identity(2));
  CHECK(max_abs(CMatrix(right.matrix()) - CMatrix(explicit_right.matrix())) < 1e-15);
}

TEST_CASE("partial traces", "[quantum_map]") {
  random::Rng rng(2);
  CVector psi = random::pure_state(rng, 8);
  CMatrix rho = psi * psi.adjoint();
  for (std::vector<int> keep : {std::vector<int>{0}, {2}, {2, 0}, {1, 2}}) {
    CMatrix want = reference::reduce(rho, 3, keep);
    CHECK(max_abs(reduce_qubits(rho, keep) - want) < 1e-14);
    CHECK(max_abs(reduce_qubits_pure(psi, keep) - want) < 1e-14);
  }
  const std::vector<int> dims{2, 3};
  const std::vector<int> keep{1};
  CMatrix r6 = random::density(rng, 6).matrix();
  CMatrix tr = partial_trace(r6, keep, dims);
  CHECK(std::abs(tr.trace() - 1.0) < 1e-14);
}

TEST_CASE("reduced maps obey the U(1) selection rule", "[quantum_map]") {
  random::Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    SpinNetwork net = random::network(rng, 5);
    auto s = random::distinct_sites(rng, 5, 2);
    auto r = random::distinct_sites(rng, 5, 2);
    ReducedMapBuilder b(net, s, r);
    auto a = b.superoperator(0.5 + trial);
    CHECK(u1_selection_violation(a) == 0.0);
    auto ref = reference::superoperator(net, s, r, 0.5 + trial);
    CHECK(max_abs(CMatrix(a.matrix()) - ref) < 1e-10);
  }
  CHECK(u1_element_allowed(0, 0, 1, 1));
  CHECK_FALSE(u1_element_allowed(0, 0, 0, 1));
  CHECK_FALSE(u1_element_allowed(1, 0, 0, 0));
}

TEST_CASE("two-qubit Kraus family is complete", "[quantum_map]") {
  random::Rng rng(17);
  SpinNetwork net = random::network(rng, 6);
  auto one = relative_to_vacuum(amplitudes(net, 1, 1.7), net);
  auto two = relative_to_vacuum(amplitudes(net, 2, 1.7), net);
  auto k = two_qubit_kraus(one, two, {0, 3}, {5, 1});
  CHECK(k.completeness_deviation() < 1e-10);
  auto table = two_qubit_map_elements(one, two, {0, 3}, {5, 1});
  CHECK(max_abs(CMatrix(table.matrix()) - CMatrix(superop_from_kraus(k).matrix())) < 1e-12);
}

TEST_CASE("trace distance", "[quantum_map]") {
  auto a = DensityMatrix::from_bits("0").matrix();
  auto b = DensityMatrix::from_bits("1").matrix();
  CHECK(std::abs(trace_distance(a, b) - 1.0) < 1e-15);
  CHECK(trace_distance(a, a) == 0.0);
}
