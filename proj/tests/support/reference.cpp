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

#include "reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace reference {

namespace {

const Complex I{0.0, 1.0};

int bit_of(long state, int site, int n) { return (state >> (n - 1 - site)) & 1; }

CMatrix yy() {
  CMatrix y(2, 2);
  y << 0.0, -I, I, 0.0;
  return kron(y, y);
}

}  // namespace

RMatrix hamiltonian(const spinmap::SpinNetwork& net) {
  const int n = net.site_count();
  const long dim = 1L << n;
  RMatrix h = RMatrix::Zero(dim, dim);
  const auto& xy = net.xy_couplings();
  const auto& zz = net.zz_couplings();
  const auto& hz = net.fields();
  for (long s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int a = 0; a < n; ++a) {
      const double za = bit_of(s, a, n) ? 1.0 : -1.0;
      diag += hz(a) * za;
      for (int b = a + 1; b < n; ++b) {
        const double zb = bit_of(s, b, n) ? 1.0 : -1.0;
        diag += zz(a, b) * za * zb;
        // XX + YY flips an anti-aligned pair with amplitude 2.
        if (bit_of(s, a, n) != bit_of(s, b, n) && xy(a, b) != 0.0) {
          const long flipped = s ^ (1L << (n - 1 - a)) ^ (1L << (n - 1 - b));
          h(flipped, s) += 2.0 * xy(a, b);
        }
      }
    }
    h(s, s) += diag;
  }
  return h;
}

CMatrix propagator(const RMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  CVector phases(h.rows());
  for (long k = 0; k < h.rows(); ++k) phases(k) = std::exp(-I * es.eigenvalues()(k) * t);
  CMatrix v = es.eigenvectors().cast<Complex>();
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix reduce(const CMatrix& rho, int qubits, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  const long dk = 1L << k;
  std::vector<int> rest;
  for (int q = 0; q < qubits; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  }
  const long dr = 1L << rest.size();
  auto compose = [&](long kept, long traced) {
    long s = 0;
    for (int a = 0; a < k; ++a) {
      if ((kept >> (k - 1 - a)) & 1) s |= 1L << (qubits - 1 - keep[a]);
    }
    const int r = static_cast<int>(rest.size());
    for (int a = 0; a < r; ++a) {
      if ((traced >> (r - 1 - a)) & 1) s |= 1L << (qubits - 1 - rest[a]);
    }
    return s;
  };
  CMatrix out = CMatrix::Zero(dk, dk);
  for (long i = 0; i < dk; ++i) {
    for (long j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (long e = 0; e < dr; ++e) acc += rho(compose(i, e), compose(j, e));
      out(i, j) = acc;
    }
  }
  return out;
}

namespace {

// Isometry |n>_S -> |n>_S |0>_rest in the full space.
CMatrix embedding(int qubits, const std::vector<int>& senders) {
  const int k = static_cast<int>(senders.size());
  CMatrix w = CMatrix::Zero(1L << qubits, 1L << k);
  for (long n = 0; n < (1L << k); ++n) {
    long s = 0;
    for (int a = 0; a < k; ++a) {
      if ((n >> (k - 1 - a)) & 1) s |= 1L << (qubits - 1 - senders[a]);
    }
    w(s, n) = 1.0;
  }
  return w;
}

}  // namespace

CMatrix reduced_output(const spinmap::SpinNetwork& net, const CMatrix& rho_s,
                       const std::vector<int>& senders,
                       const std::vector<int>& receivers, double t) {
  const int n = net.site_count();
  CMatrix u = propagator(hamiltonian(net), t) * embedding(n, senders);
  CMatrix full = u * rho_s * u.adjoint();
  return reduce(full, n, receivers);
}

CMatrix superoperator(const spinmap::SpinNetwork& net,
                      const std::vector<int>& senders,
                      const std::vector<int>& receivers, double t) {
  const int n = net.site_count();
  const long din = 1L << senders.size();
  const long dout = 1L << receivers.size();
  CMatrix u = propagator(hamiltonian(net), t) * embedding(n, senders);
  CMatrix a(dout * dout, din * din);
  for (long p = 0; p < din; ++p) {
    for (long q = 0; q < din; ++q) {
      CMatrix full = u.col(p) * u.col(q).adjoint();
      CMatrix out = reduce(full, n, receivers);
      for (long i = 0; i < dout; ++i) {
        for (long j = 0; j < dout; ++j) a(i * dout + j, p * din + q) = out(i, j);
      }
    }
  }
  return a;
}

CMatrix choi(const CMatrix& a, int din, int dout) {
  CMatrix c(din * dout, din * dout);
  for (int nn = 0; nn < din; ++nn)
    for (int i = 0; i < dout; ++i)
      for (int m = 0; m < din; ++m)
        for (int j = 0; j < dout; ++j)
          c(nn * dout + i, m * dout + j) = a(i * dout + j, nn * din + m);
  return c;
}

CptpWitness cptp_witness(const CMatrix& a, int din, int dout) {
  CMatrix c = choi(a, din, dout);
  CMatrix herm = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  double dev = 0.0;
  for (int nn = 0; nn < din; ++nn) {
    for (int m = 0; m < din; ++m) {
      Complex tr = 0.0;
      for (int i = 0; i < dout; ++i) tr += a(i * dout + i, nn * din + m);
      dev = std::max(dev, std::abs(tr - (nn == m ? 1.0 : 0.0)));
    }
  }
  return {es.eigenvalues().minCoeff(), dev};
}

CMatrix apply(const CMatrix& a, const CMatrix& rho, int dout) {
  const long din = rho.rows();
  CVector v(din * din);
  for (long n = 0; n < din; ++n)
    for (long m = 0; m < din; ++m) v(n * din + m) = rho(n, m);
  CVector w = a * v;
  CMatrix out(dout, dout);
  for (int i = 0; i < dout; ++i)
    for (int j = 0; j < dout; ++j) out(i, j) = w(i * dout + j);
  return out;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a - b;
  CMatrix herm = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double concurrence(const CMatrix& rho) {
  const CMatrix s = yy();
  CMatrix r = rho * s * rho.conjugate() * s;
  Eigen::ComplexEigenSolver<CMatrix> es(r);
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double x_concurrence(const CMatrix& r) {
  const double c1 = std::abs(r(1, 2)) - std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real()));
  const double c2 = std::abs(r(0, 3)) - std::sqrt(std::max(0.0, r(1, 1).real() * r(2, 2).real()));
  return 2.0 * std::max({0.0, c1, c2});
}

double off_x_weight(const CMatrix& r) {
  double w = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) w = std::max(w, std::abs(r(i, j)));
  return w;
}

double four_tangle(const CVector& psi) {
  CMatrix y4 = kron(yy(), yy());
  Complex amp = psi.adjoint() * (y4 * psi.conjugate());
  return std::norm(amp);
}

double three_tangle(const CVector& a) {
  auto x = [&](int i, int j, int k) { return a(4 * i + 2 * j + k); };
  Complex d1 = x(0, 0, 0) * x(0, 0, 0) * x(1, 1, 1) * x(1, 1, 1) +
               x(0, 0, 1) * x(0, 0, 1) * x(1, 1, 0) * x(1, 1, 0) +
               x(0, 1, 0) * x(0, 1, 0) * x(1, 0, 1) * x(1, 0, 1) +
               x(1, 0, 0) * x(1, 0, 0) * x(0, 1, 1) * x(0, 1, 1);
  Complex d2 = x(0, 0, 0) * x(1, 1, 1) * x(0, 1, 1) * x(1, 0, 0) +
               x(0, 0, 0) * x(1, 1, 1) * x(1, 0, 1) * x(0, 1, 0) +
               x(0, 0, 0) * x(1, 1, 1) * x(1, 1, 0) * x(0, 0, 1) +
               x(0, 1, 1) * x(1, 0, 0) * x(1, 0, 1) * x(0, 1, 0) +
               x(0, 1, 1) * x(1, 0, 0) * x(1, 1, 0) * x(0, 0, 1) +
               x(1, 0, 1) * x(0, 1, 0) * x(1, 1, 0) * x(0, 0, 1);
  Complex d3 = x(0, 0, 0) * x(1, 1, 0) * x(1, 0, 1) * x(0, 1, 1) +
               x(1, 1, 1) * x(0, 0, 1) * x(0, 1, 0) * x(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

double three_tangle_eigen_bound(const CMatrix& rho) {
  CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  double sum = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-14) sum += p * three_tangle(es.eigenvectors().col(k));
  }
  return sum;
}

double bipartition_concurrence(const CVector& psi, const std::vector<int>& group) {
  const int qubits = static_cast<int>(std::lround(std::log2(double(psi.size()))));
  CMatrix r = reduce(psi * psi.adjoint(), qubits, group);
  const double d = double(1L << group.size());
  const double purity = (r * r).trace().real();
  return std::sqrt(std::max(0.0, d / (d - 1.0) * (1.0 - purity)));
}

double four_qubit_concurrence(const CVector& psi) {
  const std::vector<std::vector<int>> groups{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}};
  double prod = 1.0;
  for (const auto& g : groups) prod *= bipartition_concurrence(psi, g);
  return std::pow(prod, 1.0 / 7.0);
}

CVector bell(int which) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (which) {
    case 0: v(0) = r; v(3) = r; break;
    case 1: v(0) = r; v(3) = -r; break;
    case 2: v(1) = r; v(2) = r; break;
    case 3: v(1) = r; v(2) = -r; break;
    default: throw std::invalid_argument("bell index");
  }
  return v;
}

CMatrix werner(double p, int which) {
  CVector b = bell(which);
  return p * b * b.adjoint() + (1.0 - p) / 4.0 * CMatrix::Identity(4, 4);
}

CVector psi_1100(double g, double J, double t) {
  const double w = g * g * t / J;
  CVector v = CVector::Zero(16);
  v(0b0011) = 0.5 * (1.0 - std::cos(w));
  v(0b0101) = 0.5 * I * std::sin(w);
  v(0b1010) = -0.5 * I * std::sin(w);
  v(0b1100) = 0.5 * (1.0 + std::cos(w));
  return v;
}

CVector psi_1010(double g, double J, double t) {
  const double w = g * g * t / J;
  const double c2 = std::cos(2.0 * J * t);
  const double s2 = std::sin(2.0 * J * t);
  CVector v = CVector::Zero(16);
  v(0b1010) = 0.5 * (c2 + std::cos(w));
  v(0b0101) = 0.5 * (c2 - std::cos(w));
  v(0b1001) = -0.5 * I * s2;
  v(0b0110) = -0.5 * I * s2;
  v(0b1100) = -0.5 * I * std::sin(w);
  v(0b0011) = 0.5 * I * std::sin(w);
  return v;
}

double phase_distance(const CVector& a, const CVector& b) {
  const Complex overlap = b.dot(a);  // <b|a>
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

double magnetization(const CVector& psi, int qubits) {
  double m = 0.0;
  for (long s = 0; s < psi.size(); ++s) {
    int up = 0;
    for (int q = 0; q < qubits; ++q) up += (s >> q) & 1;
    m += std::norm(psi(s)) * (2.0 * up - qubits);
  }
  return m;
}

}  // namespace reference
