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

#include "spinmap/quantum_map.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spinmap/kernels.hpp"

namespace spinmap {

namespace {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// Eigenvalues of the Hermitian part, ascending.
RVector hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  return es.eigenvalues();
}

void check_sites(std::span<const Site> sites, int n, const char* label) {
  SiteMask seen = 0;
  for (Site s : sites) {
    require(s >= 0 && s < n, std::string(label) + " site out of range");
    const SiteMask bit = SiteMask{1} << s;
    require((seen & bit) == 0, std::string(label) + " sites must be distinct");
    seen |= bit;
  }
}

// Mask of the sites whose bit is set in `bits`; element 0 is the most
// significant bit of a width-|sites| register.
SiteMask register_mask(unsigned bits, std::span<const Site> sites) {
  SiteMask mask = 0;
  const auto width = sites.size();
  for (std::size_t q = 0; q < width; ++q) {
    if ((bits >> (width - 1 - q)) & 1U) mask |= SiteMask{1} << sites[q];
  }
  return mask;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries, double tolerance)
    : m_(std::move(entries)) {
  require(m_.rows() > 0 && m_.rows() == m_.cols(),
          "density matrix must be square and nonempty");
  require(m_.allFinite(), "density matrix has non-finite entries");
  const double herm = max_abs(m_ - m_.adjoint());
  require(herm <= tolerance,
          "density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  const double tr = std::abs(m_.trace() - Complex(1.0, 0.0));
  require(tr <= tolerance,
          "density matrix trace differs from 1 by " + std::to_string(tr));
  min_eigenvalue_ = hermitian_eigenvalues(m_)(0);
  require(min_eigenvalue_ >= -tol::kPsdFloor,
          "density matrix not positive semidefinite (min eigenvalue " +
              std::to_string(min_eigenvalue_) + ")");
}

DensityMatrix DensityMatrix::from_pure(const CVector& psi) {
  const double norm = psi.norm();
  require(std::abs(norm - 1.0) <= tol::kState, "state vector not normalized");
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::from_bits(std::string_view bits) {
  require(!bits.empty() && bits.size() <= 20, "bit string length out of range");
  std::size_t index = 0;
  for (char c : bits) {
    require(c == '0' || c == '1', "bit string must contain only 0 and 1");
    index = 2 * index + static_cast<std::size_t>(c - '0');
  }
  const Eigen::Index dim = Eigen::Index{1} << bits.size();
  CMatrix m = CMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dimension) {
  require(dimension > 0, "dimension must be positive");
  return DensityMatrix(CMatrix::Identity(dimension, dimension) /
                       static_cast<double>(dimension));
}

double DensityMatrix::purity() const {
  return (m_ * m_).trace().real();
}

int qubit_count(Eigen::Index dimension) {
  require(dimension > 0 && std::has_single_bit(static_cast<std::uint64_t>(dimension)),
          "dimension is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(dimension));
}

// ---------------------------------------------------------------------------
// KrausSet

KrausSet::KrausSet(std::vector<CMatrix> operators, bool assert_complete)
    : ops_(std::move(operators)), complete_(assert_complete) {
  require(!ops_.empty(), "Kraus set must be nonempty");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  require(rows > 0 && cols > 0, "Kraus operators must be nonempty");
  for (const auto& op : ops_) {
    require(op.rows() == rows && op.cols() == cols,
            "Kraus operators must share one shape");
  }
  if (complete_) {
    const double dev = completeness_deviation();
    require(dev <= tol::kUnitarity,
            "Kraus completeness violated (deviation " + std::to_string(dev) + ")");
  }
}

double KrausSet::completeness_deviation() const {
  CMatrix sum = CMatrix::Zero(input_dim(), input_dim());
  for (const auto& op : ops_) sum.noalias() += op.adjoint() * op;
  return max_abs(sum - CMatrix::Identity(input_dim(), input_dim()));
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(CMatrixRowMajor entries, int input_dim,
                             int output_dim)
    : a_(std::move(entries)), input_dim_(input_dim), output_dim_(output_dim) {
  require(input_dim > 0 && output_dim > 0, "map dimensions must be positive");
  require(a_.rows() == Eigen::Index{output_dim} * output_dim &&
              a_.cols() == Eigen::Index{input_dim} * input_dim,
          "superoperator shape does not match its dimensions");
}

Superoperator Superoperator::identity(int dim) {
  require(dim > 0, "dimension must be positive");
  const Eigen::Index d2 = Eigen::Index{dim} * dim;
  return Superoperator(CMatrixRowMajor::Identity(d2, d2), dim, dim);
}

double Superoperator::trace_preservation_deviation() const {
  double worst = 0.0;
  for (int n = 0; n < input_dim_; ++n) {
    for (int m = 0; m < input_dim_; ++m) {
      Complex sum = 0.0;
      for (int i = 0; i < output_dim_; ++i) sum += element(i, i, n, m);
      worst = std::max(worst, std::abs(sum - Complex(n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double Superoperator::hermiticity_preservation_deviation() const {
  double worst = 0.0;
  for (int i = 0; i < output_dim_; ++i)
    for (int j = 0; j < output_dim_; ++j)
      for (int n = 0; n < input_dim_; ++n)
        for (int m = 0; m < input_dim_; ++m)
          worst = std::max(worst, std::abs(std::conj(element(i, j, n, m)) -
                                           element(j, i, m, n)));
  return worst;
}

// ---------------------------------------------------------------------------
// Construction

Superoperator superop_from_kraus(const KrausSet& kraus) {
  const int din = kraus.input_dim();
  const int dout = kraus.output_dim();
  CMatrixRowMajor a = CMatrixRowMajor::Zero(Eigen::Index{dout} * dout,
                                            Eigen::Index{din} * din);
  // Row (i,j) of A is sum_k E_k[i,:] (x) conj(E_k[j,:]); each term is an
  // axpy of a conjugated row scaled by one entry.
  std::vector<Complex> row_j(static_cast<std::size_t>(din));
  for (const auto& e : kraus.operators()) {
    for (int i = 0; i < dout; ++i) {
      for (int j = 0; j < dout; ++j) {
        for (int m = 0; m < din; ++m) row_j[m] = e(j, m);
        Complex* out = a.data() + (Eigen::Index{i} * dout + j) * a.cols();
        for (int n = 0; n < din; ++n) {
          const Complex alpha = e(i, n);
          if (alpha == Complex(0.0)) continue;
          kernels::axpy_conj(alpha, row_j,
                             std::span<Complex>(out + Eigen::Index{n} * din, din));
        }
      }
    }
  }
  return Superoperator(std::move(a), din, dout);
}

KrausSet one_qubit_kraus(Complex f) {
  const double mod = std::abs(f);
  require(std::isfinite(mod), "amplitude must be finite");
  require(mod <= 1.0 + tol::kAmplitudeModulus,
          "|f| exceeds 1 (" + std::to_string(mod) + ")");
  CMatrix e0 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = f;
  CMatrix e1 = CMatrix::Zero(2, 2);
  e1(0, 1) = std::sqrt(std::max(0.0, 1.0 - mod * mod));
  return KrausSet({e0, e1}, /*assert_complete=*/true);
}

Superoperator one_qubit_superoperator(Complex f) {
  const double mod2 = std::norm(f);
  CMatrixRowMajor a = CMatrixRowMajor::Zero(4, 4);
  a(0, 0) = 1.0;
  a(0, 3) = 1.0 - mod2;
  a(1, 1) = std::conj(f);
  a(2, 2) = f;
  a(3, 3) = mod2;
  return Superoperator(std::move(a), 2, 2);
}

Superoperator tensor(const Superoperator& first, const Superoperator& second) {
  const int a_in = first.input_dim(), a_out = first.output_dim();
  const int b_in = second.input_dim(), b_out = second.output_dim();
  const int din = a_in * b_in;
  const int dout = a_out * b_out;
  CMatrixRowMajor out = CMatrixRowMajor::Zero(Eigen::Index{dout} * dout,
                                              Eigen::Index{din} * din);
  for (int i1 = 0; i1 < a_out; ++i1)
    for (int j1 = 0; j1 < a_out; ++j1)
      for (int n1 = 0; n1 < a_in; ++n1)
        for (int m1 = 0; m1 < a_in; ++m1) {
          const Complex x = first.element(i1, j1, n1, m1);
          if (x == Complex(0.0)) continue;
          for (int i2 = 0; i2 < b_out; ++i2)
            for (int j2 = 0; j2 < b_out; ++j2)
              for (int n2 = 0; n2 < b_in; ++n2)
                for (int m2 = 0; m2 < b_in; ++m2) {
                  const Complex y = second.element(i2, j2, n2, m2);
                  if (y == Complex(0.0)) continue;
                  const Eigen::Index row =
                      Eigen::Index{i1 * b_out + i2} * dout + (j1 * b_out + j2);
                  const Eigen::Index col =
                      Eigen::Index{n1 * b_in + n2} * din + (m1 * b_in + m2);
                  out(row, col) += x * y;
                }
        }
  return Superoperator(std::move(out), din, dout);
}

KrausSet tensor(const KrausSet& first, const KrausSet& second) {
  std::vector<CMatrix> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& a : first.operators()) {
    for (const auto& b : second.operators()) {
      CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
          k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
      ops.push_back(std::move(k));
    }
  }
  return KrausSet(std::move(ops),
                  first.completeness_asserted() && second.completeness_asserted());
}

Superoperator extend_with_identity(const Superoperator& map, IdentitySide side,
                                   int identity_dim) {
  const auto id = Superoperator::identity(identity_dim);
  return side == IdentitySide::kLeft ? tensor(id, map) : tensor(map, id);
}

namespace {

struct PairContext {
  const AmplitudeTable& k1;
  const AmplitudeTable& k2;
  Site i, j;

  // f_src^dst
  Complex f(Site src, Site dst) const {
    return k1.at(SiteMask{1} << dst, SiteMask{1} << src);
  }
  // f_{ij}^{ab}, order of a and b irrelevant
  Complex F(Site a, Site b) const {
    const SiteMask target = (SiteMask{1} << a) | (SiteMask{1} << b);
    const SiteMask source = (SiteMask{1} << i) | (SiteMask{1} << j);
    return k2.at(target, source);
  }
};

void check_pair_inputs(const AmplitudeTable& k1, const AmplitudeTable& k2,
                       SitePair senders, SitePair receivers) {
  require(k1.sector.excitations() == 1, "first table must be the k=1 sector");
  require(k2.sector.excitations() == 2, "second table must be the k=2 sector");
  require(k1.sector.site_count() == k2.sector.site_count(),
          "amplitude tables come from different networks");
  require(k1.time == k2.time, "amplitude tables evaluated at different times");
  const int n = k1.sector.site_count();
  const Site s[2] = {senders.first, senders.second};
  const Site r[2] = {receivers.first, receivers.second};
  check_sites(s, n, "sender");
  check_sites(r, n, "receiver");
}

std::vector<Site> outside(int n, SitePair receivers) {
  std::vector<Site> env;
  for (Site k = 0; k < n; ++k) {
    if (k != receivers.first && k != receivers.second) env.push_back(k);
  }
  return env;
}

}  // namespace

KrausSet two_qubit_kraus(const AmplitudeTable& k1, const AmplitudeTable& k2,
                         SitePair senders, SitePair receivers) {
  check_pair_inputs(k1, k2, senders, receivers);
  const PairContext c{k1, k2, senders.first, senders.second};
  const Site i = senders.first, j = senders.second;
  const Site n = receivers.first, m = receivers.second;
  const auto env = outside(k1.sector.site_count(), receivers);

  std::vector<CMatrix> ops;
  CMatrix e0 = CMatrix::Zero(4, 4);
  e0(0, 0) = 1.0;
  e0(1, 1) = c.f(j, m);
  e0(1, 2) = c.f(i, m);
  e0(2, 1) = c.f(j, n);
  e0(2, 2) = c.f(i, n);
  e0(3, 3) = c.F(n, m);
  ops.push_back(std::move(e0));

  for (Site k : env) {
    CMatrix e1 = CMatrix::Zero(4, 4);
    e1(0, 1) = c.f(j, k);
    e1(0, 2) = c.f(i, k);
    e1(1, 3) = c.F(k, m);
    e1(2, 3) = c.F(n, k);
    ops.push_back(std::move(e1));
  }
  for (std::size_t a = 0; a < env.size(); ++a) {
    for (std::size_t b = a + 1; b < env.size(); ++b) {
      CMatrix e2 = CMatrix::Zero(4, 4);
      e2(0, 3) = c.F(env[a], env[b]);
      ops.push_back(std::move(e2));
    }
  }
  return KrausSet(std::move(ops), /*assert_complete=*/true);
}

Superoperator two_qubit_map_elements(const AmplitudeTable& k1,
                                     const AmplitudeTable& k2, SitePair senders,
                                     SitePair receivers) {
  check_pair_inputs(k1, k2, senders, receivers);
  const PairContext c{k1, k2, senders.first, senders.second};
  const Site i = senders.first, j = senders.second;
  const Site n = receivers.first, m = receivers.second;
  const auto env = outside(k1.sector.site_count(), receivers);

  CMatrixRowMajor a = CMatrixRowMajor::Zero(16, 16);
  auto set = [&a](int r1, int r2, int c1, int c2, Complex v) {
    a(4 * r1 + r2, 4 * c1 + c2) = v;
  };
  auto sum1 = [&env](auto&& term) {
    Complex s = 0.0;
    for (Site k : env) s += term(k);
    return s;
  };
  const auto cj = [](Complex z) { return std::conj(z); };

  const Complex fjm = c.f(j, m), fim = c.f(i, m);
  const Complex fjn = c.f(j, n), fin = c.f(i, n);
  const Complex Fnm = c.F(n, m);

  // Row 00.
  set(0, 0, 0, 0, 1.0);
  set(0, 0, 1, 1, sum1([&](Site k) { return c.f(j, k) * cj(c.f(j, k)); }));
  set(0, 0, 1, 2, sum1([&](Site k) { return c.f(j, k) * cj(c.f(i, k)); }));
  set(0, 0, 2, 1, sum1([&](Site k) { return c.f(i, k) * cj(c.f(j, k)); }));
  set(0, 0, 2, 2, sum1([&](Site k) { return c.f(i, k) * cj(c.f(i, k)); }));
  {
    Complex s = 0.0;
    for (std::size_t p = 0; p < env.size(); ++p)
      for (std::size_t q = p + 1; q < env.size(); ++q)
        s += std::norm(c.F(env[p], env[q]));
    set(0, 0, 3, 3, s);
  }
  // Rows 01, 02, 03.
  set(0, 1, 0, 1, cj(fjm));
  set(0, 1, 0, 2, cj(fim));
  set(0, 1, 1, 3, sum1([&](Site k) { return c.f(j, k) * cj(c.F(k, m)); }));
  set(0, 1, 2, 3, sum1([&](Site k) { return c.f(i, k) * cj(c.F(k, m)); }));
  set(0, 2, 0, 1, cj(fjn));
  set(0, 2, 0, 2, cj(fin));
  set(0, 2, 1, 3, sum1([&](Site k) { return c.f(j, k) * cj(c.F(n, k)); }));
  set(0, 2, 2, 3, sum1([&](Site k) { return c.f(i, k) * cj(c.F(n, k)); }));
  set(0, 3, 0, 3, cj(Fnm));
  // Rows 10..13.
  set(1, 0, 1, 0, fjm);
  set(1, 0, 2, 0, fim);
  set(1, 0, 3, 1, sum1([&](Site k) { return c.F(k, m) * cj(c.f(j, k)); }));
  set(1, 0, 3, 2, sum1([&](Site k) { return c.F(k, m) * cj(c.f(i, k)); }));
  set(1, 1, 1, 1, fjm * cj(fjm));
  set(1, 1, 1, 2, fjm * cj(fim));
  set(1, 1, 2, 1, fim * cj(fjm));
  set(1, 1, 2, 2, fim * cj(fim));
  set(1, 1, 3, 3, sum1([&](Site k) { return std::norm(c.F(k, m)); }));
  set(1, 2, 1, 1, fjm * cj(fjn));
  set(1, 2, 1, 2, fjm * cj(fin));
  set(1, 2, 2, 1, fim * cj(fjn));
  set(1, 2, 2, 2, fim * cj(fin));
  set(1, 2, 3, 3, sum1([&](Site k) { return c.F(k, m) * cj(c.F(n, k)); }));
  set(1, 3, 1, 3, fjm * cj(Fnm));
  set(1, 3, 2, 3, fim * cj(Fnm));
  // Rows 20..23.
  set(2, 0, 1, 0, fjn);
  set(2, 0, 2, 0, fin);
  set(2, 0, 3, 1, sum1([&](Site k) { return c.F(n, k) * cj(c.f(j, k)); }));
  set(2, 0, 3, 2, sum1([&](Site k) { return c.F(n, k) * cj(c.f(i, k)); }));
  set(2, 1, 1, 1, fjn * cj(fjm));
  set(2, 1, 1, 2, fjn * cj(fim));
  set(2, 1, 2, 1, fin * cj(fjm));
  set(2, 1, 2, 2, fin * cj(fim));
  set(2, 1, 3, 3, sum1([&](Site k) { return c.F(n, k) * cj(c.F(k, m)); }));
  set(2, 2, 1, 1, fjn * cj(fjn));
  set(2, 2, 1, 2, fjn * cj(fin));
  set(2, 2, 2, 1, fin * cj(fjn));
  set(2, 2, 2, 2, fin * cj(fin));
  set(2, 2, 3, 3, sum1([&](Site k) { return std::norm(c.F(n, k)); }));
  set(2, 3, 1, 3, fjn * cj(Fnm));
  set(2, 3, 2, 3, fin * cj(Fnm));
  // Rows 30..33.
  set(3, 0, 3, 0, Fnm);
  set(3, 1, 3, 1, Fnm * cj(fjm));
  set(3, 1, 3, 2, Fnm * cj(fim));
  set(3, 2, 3, 1, Fnm * cj(fjn));
  set(3, 2, 3, 2, Fnm * cj(fin));
  set(3, 3, 3, 3, std::norm(Fnm));
  return Superoperator(std::move(a), 4, 4);
}

KrausSet network_kraus(std::span<const AmplitudeTable> tables,
                       std::span<const Site> senders,
                       std::span<const Site> receivers) {
  require(!senders.empty() && !receivers.empty(),
          "sender and receiver lists must be nonempty");
  require(senders.size() <= 10 && receivers.size() <= 10,
          "at most 10 sender and receiver sites");
  require(tables.size() == senders.size() + 1,
          "need one amplitude table per excitation number 0..|senders|");
  const int n = tables.front().sector.site_count();
  for (std::size_t k = 0; k < tables.size(); ++k) {
    require(tables[k].sector.excitations() == static_cast<int>(k),
            "tables must be ordered by excitation number");
    require(tables[k].sector.site_count() == n,
            "amplitude tables come from different networks");
    require(tables[k].time == tables.front().time,
            "amplitude tables evaluated at different times");
  }
  check_sites(senders, n, "sender");
  check_sites(receivers, n, "receiver");

  const SiteMask receiver_mask = mask_of(receivers);
  std::vector<Site> env;
  for (Site k = 0; k < n; ++k) {
    if (!((receiver_mask >> k) & 1U)) env.push_back(k);
  }
  const int s = static_cast<int>(senders.size());
  const int r = static_cast<int>(receivers.size());
  const unsigned din = 1U << s;
  const unsigned dout = 1U << r;

  // Enumerate environment configurations with at most s excitations,
  // grouped by size and lexicographic within a size.
  std::vector<SiteMask> env_configs;
  const int max_env = std::min<int>(s, static_cast<int>(env.size()));
  for (int size = 0; size <= max_env; ++size) {
    ExcitationSector sub(static_cast<int>(env.size()), size);
    for (std::size_t idx = 0; idx < sub.dimension(); ++idx) {
      SiteMask mask = 0;
      for (Site local : sub.sites(idx)) mask |= SiteMask{1} << env[local];
      env_configs.push_back(mask);
    }
  }

  std::vector<CMatrix> ops;
  ops.reserve(env_configs.size());
  for (SiteMask env_mask : env_configs) {
    const int env_count = std::popcount(env_mask);
    CMatrix e = CMatrix::Zero(dout, din);
    bool any = false;
    for (unsigned b = 0; b < din; ++b) {
      const int k = std::popcount(b);
      const SiteMask source = register_mask(b, senders);
      for (unsigned a = 0; a < dout; ++a) {
        if (std::popcount(a) + env_count != k) continue;
        const SiteMask target = register_mask(a, receivers) | env_mask;
        e(a, b) = tables[k].at(target, source);
        any = true;
      }
    }
    if (any) ops.push_back(std::move(e));
  }
  return KrausSet(std::move(ops), /*assert_complete=*/true);
}

ReducedMapBuilder::ReducedMapBuilder(const SpinNetwork& network,
                                     std::vector<Site> senders,
                                     std::vector<Site> receivers)
    : senders_(std::move(senders)), receivers_(std::move(receivers)) {
  require(!senders_.empty() && !receivers_.empty(),
          "sender and receiver lists must be nonempty");
  check_sites(senders_, network.site_count(), "sender");
  check_sites(receivers_, network.site_count(), "receiver");
  for (int k = 0; k <= static_cast<int>(senders_.size()); ++k) {
    propagators_.emplace_back(network, k);
  }
}

std::vector<AmplitudeTable> ReducedMapBuilder::tables(double time) const {
  std::vector<AmplitudeTable> out;
  out.reserve(propagators_.size());
  for (const auto& p : propagators_) out.push_back(p.at(time));
  return out;
}

KrausSet ReducedMapBuilder::kraus(double time) const {
  const auto t = tables(time);
  return network_kraus(t, senders_, receivers_);
}

Superoperator ReducedMapBuilder::superoperator(double time) const {
  return superop_from_kraus(kraus(time));
}

// ---------------------------------------------------------------------------
// Application and verification

CMatrix apply_raw(const Superoperator& map, const CMatrix& rho) {
  const int din = map.input_dim();
  const int dout = map.output_dim();
  require(rho.rows() == din && rho.cols() == din,
          "state dimension does not match the map input");
  CMatrixRowMajor in = rho;  // row-major copy is the vectorization
  CMatrixRowMajor out(dout, dout);
  kernels::complex_matvec(
      std::span<const Complex>(map.matrix().data(), map.matrix().size()),
      map.matrix().rows(), map.matrix().cols(),
      std::span<const Complex>(in.data(), in.size()),
      std::span<Complex>(out.data(), out.size()));
  return CMatrix(out);
}

DensityMatrix apply(const Superoperator& map, const DensityMatrix& rho) {
  return DensityMatrix(apply_raw(map, rho.matrix()));
}

DensityMatrix apply(const KrausSet& map, const DensityMatrix& rho) {
  require(rho.dimension() == map.input_dim(),
          "state dimension does not match the map input");
  CMatrix out = CMatrix::Zero(map.output_dim(), map.output_dim());
  for (const auto& e : map.operators()) {
    out.noalias() += e * rho.matrix() * e.adjoint();
  }
  return DensityMatrix(std::move(out));
}

ChoiMatrix choi(const Superoperator& map) {
  const int din = map.input_dim();
  const int dout = map.output_dim();
  const int d = din * dout;
  CMatrix c(d, d);
  for (int n = 0; n < din; ++n)
    for (int i = 0; i < dout; ++i)
      for (int m = 0; m < din; ++m)
        for (int j = 0; j < dout; ++j)
          c(n * dout + i, m * dout + j) = map.element(i, j, n, m);
  return ChoiMatrix{std::move(c), din, dout};
}

CptpVerdict is_cptp(const Superoperator& map, double tolerance) {
  const auto c = choi(map);
  CptpVerdict v;
  v.min_eigenvalue = hermitian_eigenvalues(c.entries)(0);
  v.trace_deviation = map.trace_preservation_deviation();
  const double herm = max_abs(c.entries - c.entries.adjoint());
  v.cptp = v.min_eigenvalue >= -tolerance &&
           v.trace_deviation <= tol::kUnitarity && herm <= tol::kUnitarity;
  return v;
}

KrausSet kraus_from_choi(const ChoiMatrix& c, double cutoff) {
  const int din = c.input_dim;
  const int dout = c.output_dim;
  require(c.entries.rows() == din * dout && c.entries.cols() == din * dout,
          "Choi matrix shape does not match its dimensions");
  const CMatrix h = 0.5 * (c.entries + c.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Choi eigendecomposition failed");
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index a = es.eigenvalues().size() - 1; a >= 0; --a) {
    const double mu = es.eigenvalues()(a);
    if (mu <= cutoff) break;
    const double w = std::sqrt(mu);
    CMatrix k(dout, din);
    for (int n = 0; n < din; ++n)
      for (int i = 0; i < dout; ++i) k(i, n) = w * es.eigenvectors()(n * dout + i, a);
    ops.push_back(std::move(k));
  }
  require(!ops.empty(), "Choi matrix has no positive eigenvalues");
  return KrausSet(std::move(ops), /*assert_complete=*/false);
}

// ---------------------------------------------------------------------------
// Partial traces

namespace {

struct FactorLayout {
  std::vector<Eigen::Index> stride;  // per factor
  Eigen::Index total = 1;
  Eigen::Index keep_dim = 1;
  Eigen::Index rest_dim = 1;
  std::vector<int> rest;  // traced factors in ascending order
};

FactorLayout layout(std::span<const int> keep, std::span<const int> dims) {
  require(!dims.empty(), "factor dimensions must be nonempty");
  FactorLayout l;
  l.stride.assign(dims.size(), 1);
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    require(dims[f] > 0, "factor dimensions must be positive");
    l.stride[f] = l.total;
    l.total *= dims[f];
  }
  std::vector<bool> kept(dims.size(), false);
  for (int f : keep) {
    require(f >= 0 && f < static_cast<int>(dims.size()), "kept factor out of range");
    require(!kept[f], "kept factors must be distinct");
    kept[f] = true;
    l.keep_dim *= dims[f];
  }
  for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
    if (!kept[f]) {
      l.rest.push_back(f);
      l.rest_dim *= dims[f];
    }
  }
  return l;
}

// Full index for the kept digits of `kidx` (in `keep` order) and traced
// digits of `ridx` (in ascending factor order).
Eigen::Index compose(Eigen::Index kidx, Eigen::Index ridx,
                     std::span<const int> keep, const std::vector<int>& rest,
                     std::span<const int> dims, const FactorLayout& l) {
  Eigen::Index full = 0;
  for (int q = static_cast<int>(keep.size()) - 1; q >= 0; --q) {
    const int f = keep[q];
    full += (kidx % dims[f]) * l.stride[f];
    kidx /= dims[f];
  }
  for (int q = static_cast<int>(rest.size()) - 1; q >= 0; --q) {
    const int f = rest[q];
    full += (ridx % dims[f]) * l.stride[f];
    ridx /= dims[f];
  }
  return full;
}

std::vector<Eigen::Index> index_map(const FactorLayout& l,
                                    std::span<const int> keep,
                                    std::span<const int> dims) {
  std::vector<Eigen::Index> map(static_cast<std::size_t>(l.total));
  for (Eigen::Index k = 0; k < l.keep_dim; ++k)
    for (Eigen::Index r = 0; r < l.rest_dim; ++r)
      map[k * l.rest_dim + r] = compose(k, r, keep, l.rest, dims, l);
  return map;
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep,
                      std::span<const int> dims) {
  const auto l = layout(keep, dims);
  require(rho.rows() == l.total && rho.cols() == l.total,
          "factor dimensions inconsistent with the matrix");
  const auto map = index_map(l, keep, dims);
  CMatrix out = CMatrix::Zero(l.keep_dim, l.keep_dim);
  for (Eigen::Index a = 0; a < l.keep_dim; ++a)
    for (Eigen::Index b = 0; b < l.keep_dim; ++b) {
      Complex s = 0.0;
      for (Eigen::Index r = 0; r < l.rest_dim; ++r)
        s += rho(map[a * l.rest_dim + r], map[b * l.rest_dim + r]);
      out(a, b) = s;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep,
                            std::span<const int> dims) {
  return DensityMatrix(partial_trace(rho.matrix(), keep, dims));
}

CMatrix partial_trace_pure(const CVector& psi, std::span<const int> keep,
                           std::span<const int> dims) {
  const auto l = layout(keep, dims);
  require(psi.size() == l.total, "factor dimensions inconsistent with the vector");
  const auto map = index_map(l, keep, dims);
  CMatrix m(l.keep_dim, l.rest_dim);
  for (Eigen::Index a = 0; a < l.keep_dim; ++a)
    for (Eigen::Index r = 0; r < l.rest_dim; ++r) m(a, r) = psi(map[a * l.rest_dim + r]);
  return m * m.adjoint();
}

CMatrix reduce_qubits(const CMatrix& rho, std::span<const int> keep) {
  const std::vector<int> dims(static_cast<std::size_t>(qubit_count(rho.rows())), 2);
  return partial_trace(rho, keep, dims);
}

CMatrix reduce_qubits_pure(const CVector& psi, std::span<const int> keep) {
  const std::vector<int> dims(static_cast<std::size_t>(qubit_count(psi.size())), 2);
  return partial_trace_pure(psi, keep, dims);
}

bool u1_element_allowed(unsigned i, unsigned j, unsigned n, unsigned m) {
  const int lost_row = std::popcount(n) - std::popcount(i);
  const int lost_col = std::popcount(m) - std::popcount(j);
  return lost_row == lost_col && lost_row >= 0;
}

double u1_selection_violation(const Superoperator& map) {
  double worst = 0.0;
  const auto din = static_cast<unsigned>(map.input_dim());
  const auto dout = static_cast<unsigned>(map.output_dim());
  for (unsigned i = 0; i < dout; ++i)
    for (unsigned j = 0; j < dout; ++j)
      for (unsigned n = 0; n < din; ++n)
        for (unsigned m = 0; m < din; ++m)
          if (!u1_element_allowed(i, j, n, m))
            worst = std::max(worst, std::abs(map.element(static_cast<int>(i),
                                                         static_cast<int>(j),
                                                         static_cast<int>(n),
                                                         static_cast<int>(m))));
  return worst;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "trace distance needs equal shapes");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  return hermitian_eigenvalues(m)(0);
}

}  // namespace spinmap
