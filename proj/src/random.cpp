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

#include "spinmap/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinmap::random {

namespace {

CMatrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

// Isometry with Haar-distributed columns.
CMatrix isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const CMatrix z = ginibre(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

SpinNetwork network(Rng& rng, int sites, const NetworkOptions& options) {
  if (sites < 1) throw std::invalid_argument("network needs at least one site");
  std::uniform_real_distribution<double> u(-options.coupling_scale,
                                           options.coupling_scale);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RMatrix j = RMatrix::Zero(sites, sites);
  RMatrix d = RMatrix::Zero(sites, sites);
  RVector h = RVector::Zero(sites);

  std::vector<int> order(static_cast<std::size_t>(sites));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 0; k + 1 < sites; ++k) {
    const int a = order[k], b = order[k + 1];
    double v = u(rng);
    if (std::abs(v) < 0.1 * options.coupling_scale) v = 0.1 * options.coupling_scale;
    j(a, b) = j(b, a) = v;
  }
  for (int a = 0; a < sites; ++a) {
    for (int b = a + 1; b < sites; ++b) {
      if (j(a, b) == 0.0 && unit(rng) < options.edge_probability) {
        j(a, b) = j(b, a) = u(rng);
      }
      if (options.anisotropy && j(a, b) != 0.0) d(a, b) = d(b, a) = u(rng);
    }
    if (options.fields) h(a) = u(rng);
  }
  return SpinNetwork(std::move(j), std::move(d), std::move(h));
}

CVector pure_state(Rng& rng, Eigen::Index dimension) {
  CVector v = ginibre(rng, dimension, 1).col(0);
  return v / v.norm();
}

DensityMatrix density(Rng& rng, int dimension, int rank) {
  if (rank <= 0) rank = dimension;
  const CMatrix g = ginibre(rng, dimension, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho));
}

CMatrix unitary(Rng& rng, int dimension) {
  return isometry(rng, dimension, dimension);
}

KrausSet kraus(Rng& rng, int input_dim, int output_dim, int count) {
  if (count < 1) throw std::invalid_argument("need at least one Kraus operator");
  if (Eigen::Index{output_dim} * count < input_dim) {
    throw std::invalid_argument("too few Kraus operators for an isometry");
  }
  const CMatrix v = isometry(rng, Eigen::Index{output_dim} * count, input_dim);
  std::vector<CMatrix> ops;
  for (int k = 0; k < count; ++k) ops.push_back(v.middleRows(Eigen::Index{k} * output_dim, output_dim));
  return KrausSet(std::move(ops));
}

XState x_state(Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  XState x;
  double p[4];
  double total = 0.0;
  for (double& v : p) total += (v = e(rng));
  x.p00 = p[0] / total;
  x.p11 = p[1] / total;
  x.p22 = p[2] / total;
  x.p33 = p[3] / total;
  x.p03 = std::polar(std::sqrt(x.p00 * x.p33) * unit(rng), angle(rng));
  x.p12 = std::polar(std::sqrt(x.p11 * x.p22) * unit(rng), angle(rng));
  return x;
}

std::vector<Site> distinct_sites(Rng& rng, int sites, int count) {
  if (count < 0 || count > sites) throw std::invalid_argument("cannot pick that many sites");
  std::vector<Site> all(static_cast<std::size_t>(sites));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(count));
  return all;
}

}  // namespace spinmap::random
