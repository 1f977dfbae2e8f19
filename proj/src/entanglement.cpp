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

#include "spinmap/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinmap {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

void require_normalized(const CVector& psi) {
  require(std::abs(psi.norm() - 1.0) <= tol::kState, "state vector not normalized");
}

double purity(const CMatrix& rho) { return (rho * rho).trace().real(); }

// Eigendecomposition of a validated two-qubit or three-qubit state.
Eigen::SelfAdjointEigenSolver<CMatrix> checked_eigen(const CMatrix& rho,
                                                     const char* what) {
  require(rho.allFinite(),
          std::string(what) + ": non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  require(herm <= tol::kState, std::string(what) + ": matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) + ": eigendecomposition failed");
  }
  require(es.eigenvalues()(0) >= -tol::kPsdFloor,
          std::string(what) + ": matrix not positive semidefinite");
  return es;
}

}  // namespace

double clip_measure(double value, std::string_view what) {
  if (!(value >= -tol::kMeasureWindow && value <= 1.0 + tol::kMeasureWindow)) {
    throw std::domain_error(std::string(what) + " outside [0,1]: " +
                            std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

double concurrence(const CMatrix& rho) {
  require(rho.rows() == 4 && rho.cols() == 4, "concurrence needs a 4x4 state");
  const auto es = checked_eigen(rho, "concurrence");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index a = 0; a < 4; ++a) {
    if (es.eigenvalues()(a) > 0.0) keep.push_back(a);
  }
  if (keep.empty()) return 0.0;
  CMatrix w(4, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    w.col(static_cast<Eigen::Index>(c)) =
        std::sqrt(es.eigenvalues()(keep[c])) * es.eigenvectors().col(keep[c]);
  }
  // (Y x Y) acts as |00> -> -|11>, |01> -> |10>, |10> -> |01>, |11> -> -|00>.
  CMatrix yw(4, w.cols());
  yw.row(0) = -w.row(3);
  yw.row(1) = w.row(2);
  yw.row(2) = w.row(1);
  yw.row(3) = -w.row(0);
  const CMatrix tau = w.transpose() * yw;
  Eigen::JacobiSVD<CMatrix> svd(tau);
  std::array<double, 4> s{};
  for (Eigen::Index a = 0; a < svd.singularValues().size(); ++a) {
    s[static_cast<std::size_t>(a)] = svd.singularValues()(a);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return clip_measure(std::max(0.0, s[0] - s[1] - s[2] - s[3]), "concurrence");
}

double concurrence(const DensityMatrix& rho) { return concurrence(rho.matrix()); }

// ---------------------------------------------------------------------------
// X states

void XState::validate() const {
  const double t = tol::kState;
  for (double p : {p00, p11, p22, p33}) {
    require(std::isfinite(p) && p >= -t, "X state populations must be nonnegative");
  }
  require(std::abs(p00 + p11 + p22 + p33 - 1.0) <= t,
          "X state populations must sum to 1");
  require(std::norm(p03) <= p00 * p33 + t, "X state violates |p03|^2 <= p00 p33");
  require(std::norm(p12) <= p11 * p22 + t, "X state violates |p12|^2 <= p11 p22");
}

CMatrix XState::matrix() const {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = p00;
  m(1, 1) = p11;
  m(2, 2) = p22;
  m(3, 3) = p33;
  m(0, 3) = p03;
  m(3, 0) = std::conj(p03);
  m(1, 2) = p12;
  m(2, 1) = std::conj(p12);
  return m;
}

XState XState::from_matrix(const CMatrix& rho, double tolerance) {
  require(rho.rows() == 4 && rho.cols() == 4, "X state needs a 4x4 matrix");
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool x_slot = r == c || r + c == 3;
      require(x_slot || std::abs(rho(r, c)) <= tolerance,
              "matrix has entries outside the X pattern");
    }
  }
  XState x;
  x.p00 = rho(0, 0).real();
  x.p11 = rho(1, 1).real();
  x.p22 = rho(2, 2).real();
  x.p33 = rho(3, 3).real();
  x.p03 = rho(0, 3);
  x.p12 = rho(1, 2);
  x.validate();
  return x;
}

namespace {

XConcurrence finish(double c1, double c2) {
  XConcurrence out;
  out.c1 = c1;
  out.c2 = c2;
  out.c = clip_measure(2.0 * std::max({0.0, c1, c2}), "X state concurrence");
  return out;
}

double checked_modulus(Complex f) {
  const double m = std::abs(f);
  require(std::isfinite(m) && m <= 1.0 + tol::kAmplitudeModulus,
          "|f| must not exceed 1");
  return std::min(m, 1.0);
}

double sqrt0(double v) { return std::sqrt(std::max(0.0, v)); }

}  // namespace

XConcurrence x_state_concurrence(const XState& x) {
  x.validate();
  return finish(std::abs(x.p12) - sqrt0(x.p00 * x.p33),
                std::abs(x.p03) - sqrt0(x.p11 * x.p22));
}

XConcurrence x_state_transferred_concurrence(const XState& x, Complex f) {
  x.validate();
  const double m = checked_modulus(f);
  const double loss = 1.0 - m * m;
  return finish(m * (std::abs(x.p12) - sqrt0(x.p33 * (x.p00 + x.p11 * loss))),
                m * (std::abs(x.p03) - sqrt0(x.p11 * (x.p22 + x.p33 * loss))));
}

XConcurrence dual_rail_transferred_concurrence(const XState& x, Complex f) {
  x.validate();
  const double m = checked_modulus(f);
  const double m2 = m * m;
  const double loss = 1.0 - m2;
  const double c1 =
      m2 * (std::abs(x.p12) -
            sqrt0(x.p33 * (x.p00 + loss * (x.p11 + x.p22 + loss * x.p33))));
  const double c2 = m2 * (std::abs(x.p03) -
                          sqrt0((x.p11 + loss * x.p33) * (x.p22 + loss * x.p33)));
  return finish(c1, c2);
}

// ---------------------------------------------------------------------------
// Bell and Werner states

BellState parse_bell_state(std::string_view name) {
  if (name == "phi+") return BellState::kPhiPlus;
  if (name == "phi-") return BellState::kPhiMinus;
  if (name == "psi+") return BellState::kPsiPlus;
  if (name == "psi-") return BellState::kPsiMinus;
  throw std::invalid_argument("unknown Bell state '" + std::string(name) +
                              "' (expected phi+, phi-, psi+, psi-)");
}

std::string_view bell_state_name(BellState bell) {
  switch (bell) {
    case BellState::kPhiPlus:
      return "phi+";
    case BellState::kPhiMinus:
      return "phi-";
    case BellState::kPsiPlus:
      return "psi+";
    case BellState::kPsiMinus:
      return "psi-";
  }
  return "?";
}

CVector bell_state(BellState bell) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (bell) {
    case BellState::kPhiPlus:
      v(0) = r;
      v(3) = r;
      break;
    case BellState::kPhiMinus:
      v(0) = r;
      v(3) = -r;
      break;
    case BellState::kPsiPlus:
      v(1) = r;
      v(2) = r;
      break;
    case BellState::kPsiMinus:
      v(1) = r;
      v(2) = -r;
      break;
  }
  return v;
}

DensityMatrix werner(double p, BellState bell) {
  require(p >= 0.0 && p <= 1.0, "Werner weight must lie in [0, 1]");
  const CVector b = bell_state(bell);
  return DensityMatrix(p * (b * b.adjoint()) +
                       (1.0 - p) * CMatrix::Identity(4, 4) / 4.0);
}

XState werner_x_state(double p, BellState bell) {
  require(p >= 0.0 && p <= 1.0, "Werner weight must lie in [0, 1]");
  const double bg = (1.0 - p) / 4.0;
  XState x;
  x.p00 = x.p11 = x.p22 = x.p33 = bg;
  switch (bell) {
    case BellState::kPhiPlus:
    case BellState::kPhiMinus:
      x.p00 += p / 2.0;
      x.p33 += p / 2.0;
      x.p03 = bell == BellState::kPhiPlus ? p / 2.0 : -p / 2.0;
      break;
    case BellState::kPsiPlus:
    case BellState::kPsiMinus:
      x.p11 += p / 2.0;
      x.p22 += p / 2.0;
      x.p12 = bell == BellState::kPsiPlus ? p / 2.0 : -p / 2.0;
      break;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Multipartite measures

double four_tangle(const CVector& psi) {
  const int n = qubit_count(psi.size());
  require(n % 2 == 0, "tangle needs an even number of qubits");
  require_normalized(psi);
  // Y^{(x)n} |b> = i^n (-1)^{|b|} |~b>.
  const auto full = static_cast<std::uint64_t>(psi.size() - 1);
  Complex s = 0.0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub) & 1) ? -1.0 : 1.0;
    s += sign * psi(b) * psi(static_cast<Eigen::Index>(full ^ ub));
  }
  return clip_measure(std::norm(s), "four-tangle");
}

double bipartition_concurrence(const CVector& psi, std::span<const int> group) {
  require_normalized(psi);
  require(!group.empty(), "bipartition group must be nonempty");
  const CMatrix rho = reduce_qubits_pure(psi, group);
  const double d = static_cast<double>(rho.rows());
  const double v = d / (d - 1.0) * (1.0 - purity(rho));
  return clip_measure(std::sqrt(std::max(0.0, v)), "bipartition concurrence");
}

double three_tangle_pure(const CVector& psi) {
  require(psi.size() == 8, "three-tangle needs a three-qubit state");
  require_normalized(psi);
  const int a[] = {0};
  const int ab[] = {0, 1};
  const int ac[] = {0, 2};
  const double ca = 2.0 * (1.0 - purity(reduce_qubits_pure(psi, a)));
  const double cab = concurrence(reduce_qubits_pure(psi, ab));
  const double cac = concurrence(reduce_qubits_pure(psi, ac));
  return clip_measure(ca - cab * cab - cac * cac, "three-tangle");
}

double three_tangle_decomposition_bound(const CMatrix& rho) {
  require(rho.rows() == 8 && rho.cols() == 8, "three-tangle needs an 8x8 state");
  require(std::abs(rho.trace() - Complex(1.0)) <= tol::kState,
          "three-qubit state must have unit trace");
  checked_eigen(rho, "three-tangle bound");

  double off_sector = 0.0;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      if (std::popcount(unsigned(r)) != std::popcount(unsigned(c)))
        off_sector = std::max(off_sector, std::abs(rho(r, c)));

  std::vector<std::vector<int>> blocks;
  if (off_sector <= tol::kHermitian) {
    blocks.resize(4);
    for (int r = 0; r < 8; ++r) blocks[std::popcount(unsigned(r))].push_back(r);
  } else {
    blocks.push_back({0, 1, 2, 3, 4, 5, 6, 7});
  }

  double bound = 0.0;
  for (const auto& idx : blocks) {
    const auto d = static_cast<Eigen::Index>(idx.size());
    if (d == 0) continue;
    CMatrix sub(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) sub(r, c) = rho(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (sub + sub.adjoint()));
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("three-tangle bound: eigendecomposition failed");
    }
    for (Eigen::Index a = 0; a < d; ++a) {
      const double w = es.eigenvalues()(a);
      if (w <= 1e-14) continue;
      CVector v = CVector::Zero(8);
      for (Eigen::Index r = 0; r < d; ++r) v(idx[r]) = es.eigenvectors()(r, a);
      v.normalize();
      bound += w * three_tangle_pure(v);
    }
  }
  return clip_measure(bound, "three-tangle bound");
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
constexpr std::array<std::array<int, 2>, 3> kSplits{{{0, 1}, {0, 2}, {0, 3}}};

double geometric_mean7(const std::array<double, 4>& one,
                       const std::array<double, 3>& two) {
  double log_sum = 0.0;
  for (double v : one) {
    if (v <= 0.0) return 0.0;
    log_sum += std::log(v);
  }
  for (double v : two) {
    if (v <= 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return clip_measure(std::exp(log_sum / 7.0), "four-qubit concurrence");
}

}  // namespace

double four_qubit_concurrence(const CVector& psi) {
  require(psi.size() == 16, "four-qubit concurrence needs a four-qubit state");
  std::array<double, 4> one{};
  std::array<double, 3> two{};
  for (int q = 0; q < 4; ++q) {
    const int g[] = {q};
    one[q] = bipartition_concurrence(psi, g);
  }
  for (std::size_t s = 0; s < kSplits.size(); ++s) {
    two[s] = bipartition_concurrence(psi, kSplits[s]);
  }
  return geometric_mean7(one, two);
}

int MeasureReport::pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (kPairs[k][0] == a && kPairs[k][1] == b) return static_cast<int>(k);
  }
  throw std::out_of_range("qubit pair out of range");
}

MeasureReport four_qubit_report(const CVector& psi) {
  require(psi.size() == 16, "measure report needs a four-qubit state");
  require_normalized(psi);
  MeasureReport r;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    r.pair[k] = concurrence(reduce_qubits_pure(psi, kPairs[k]));
  }
  for (int q = 0; q < 4; ++q) {
    const int g[] = {q};
    r.one_vs_rest[q] = bipartition_concurrence(psi, g);
    std::vector<int> rest;
    for (int p = 0; p < 4; ++p)
      if (p != q) rest.push_back(p);
    r.three_tangle[q] = three_tangle_decomposition_bound(reduce_qubits_pure(psi, rest));
  }
  for (std::size_t s = 0; s < kSplits.size(); ++s) {
    r.pair_vs_pair[s] = bipartition_concurrence(psi, kSplits[s]);
  }
  r.four_tangle = four_tangle(psi);
  r.four_qubit_concurrence = geometric_mean7(r.one_vs_rest, r.pair_vs_pair);
  return r;
}

}  // namespace spinmap
