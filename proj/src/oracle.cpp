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

#include "spinmap/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmap::oracle {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

void check_size(int n) {
  require(n >= 1 && n <= kMaxSites,
          "oracle supports 1.." + std::to_string(kMaxSites) + " sites");
}

// Single-site Pauli action on a basis index. |0> is the Z = -1 state.
struct Action {
  Eigen::Index index;
  Complex phase;
};

int bit_of(Eigen::Index b, int site, int n) {
  return static_cast<int>((b >> (n - 1 - site)) & 1);
}

Action pauli(char p, int site, int n, Action in) {
  const int bit = bit_of(in.index, site, n);
  const Eigen::Index flipped = in.index ^ (Eigen::Index{1} << (n - 1 - site));
  switch (p) {
    case 'X':
      return {flipped, in.phase};
    case 'Y':
      return {flipped, in.phase * (bit == 0 ? Complex(0, -1) : Complex(0, 1))};
    case 'Z':
      return {in.index, in.phase * (bit == 0 ? -1.0 : 1.0)};
  }
  throw std::logic_error("unknown Pauli label");
}

void add_two_site(CMatrix& h, char p, int a, int b, int n, double weight) {
  for (Eigen::Index col = 0; col < h.cols(); ++col) {
    const Action out = pauli(p, a, n, pauli(p, b, n, {col, 1.0}));
    h(out.index, col) += weight * out.phase;
  }
}

}  // namespace

Eigen::Index basis_index(SiteMask excited, int site_count) {
  check_size(site_count);
  Eigen::Index b = 0;
  for (int s = 0; s < site_count; ++s) {
    if ((excited >> s) & 1U) b |= Eigen::Index{1} << (site_count - 1 - s);
  }
  return b;
}

RMatrix full_hamiltonian(const SpinNetwork& network) {
  const int n = network.site_count();
  check_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double j = network.xy_couplings()(a, b);
      const double d = network.zz_couplings()(a, b);
      if (j != 0.0) {
        add_two_site(h, 'X', a, b, n, j);
        add_two_site(h, 'Y', a, b, n, j);
      }
      if (d != 0.0) add_two_site(h, 'Z', a, b, n, d);
    }
    const double f = network.fields()(a);
    if (f != 0.0) {
      for (Eigen::Index col = 0; col < dim; ++col) {
        const Action out = pauli('Z', a, n, {col, 1.0});
        h(out.index, col) += f * out.phase;
      }
    }
  }
  if (h.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw std::logic_error("Hamiltonian acquired an imaginary part");
  }
  return h.real();
}

FullEvolution::FullEvolution(const SpinNetwork& network)
    : sites_(network.site_count()) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(full_hamiltonian(network));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("full Hamiltonian eigendecomposition failed");
  }
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

CMatrix FullEvolution::unitary(double time) const {
  require(std::isfinite(time), "time must be finite");
  CVector phase(energies_.size());
  for (Eigen::Index a = 0; a < energies_.size(); ++a) {
    phase(a) = std::polar(1.0, -energies_(a) * time);
  }
  const CMatrix v = vectors_.cast<Complex>();
  return v * phase.asDiagonal() * v.transpose();
}

CMatrix FullEvolution::evolve_columns(const CMatrix& columns, double time) const {
  require(std::isfinite(time), "time must be finite");
  require(columns.rows() == energies_.size(), "state dimension mismatch");
  CMatrix coeff = vectors_.transpose().cast<Complex>() * columns;
  for (Eigen::Index a = 0; a < energies_.size(); ++a) {
    coeff.row(a) *= std::polar(1.0, -energies_(a) * time);
  }
  return vectors_.cast<Complex>() * coeff;
}

CVector FullEvolution::evolve(const CVector& psi, double time) const {
  return evolve_columns(psi, time).col(0);
}

CMatrix FullEvolution::evolve_density(const CMatrix& rho, double time) const {
  const CMatrix u = unitary(time);
  return u * rho * u.adjoint();
}

CVector full_evolve(const SpinNetwork& network, const CVector& psi, double time) {
  return FullEvolution(network).evolve(psi, time);
}

CMatrix full_evolve(const SpinNetwork& network, const CMatrix& rho, double time) {
  return FullEvolution(network).evolve_density(rho, time);
}

DensityMatrix reduced_output(const SpinNetwork& network, const DensityMatrix& rho_s,
                             std::span<const Site> senders,
                             std::span<const Site> receivers, double time) {
  return reduced_output(FullEvolution(network), rho_s, senders, receivers, time);
}

DensityMatrix reduced_output(const FullEvolution& evolution,
                             const DensityMatrix& rho_s,
                             std::span<const Site> senders,
                             std::span<const Site> receivers, double time) {
  const int n = evolution.site_count();
  require(!senders.empty() && !receivers.empty(), "site lists must be nonempty");
  SiteMask seen_s = 0, seen_r = 0;
  for (Site s : senders) {
    require(s >= 0 && s < n && !((seen_s >> s) & 1U), "invalid sender sites");
    seen_s |= SiteMask{1} << s;
  }
  for (Site r : receivers) {
    require(r >= 0 && r < n && !((seen_r >> r) & 1U), "invalid receiver sites");
    seen_r |= SiteMask{1} << r;
  }
  const auto q = static_cast<int>(senders.size());
  require(rho_s.dimension() == (1 << q), "sender state dimension mismatch");

  // rho_s = W W^dagger, each column embedded with the rest of the network
  // in |0...0>.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_s.matrix());
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Eigen::Index> embed(static_cast<std::size_t>(1 << q));
  for (int a = 0; a < (1 << q); ++a) {
    SiteMask mask = 0;
    for (int k = 0; k < q; ++k) {
      if ((a >> (q - 1 - k)) & 1) mask |= SiteMask{1} << senders[k];
    }
    embed[a] = basis_index(mask, n);
  }
  std::vector<Eigen::Index> cols;
  for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
    if (es.eigenvalues()(c) > 0.0) cols.push_back(c);
  }
  CMatrix w = CMatrix::Zero(dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const double weight = std::sqrt(es.eigenvalues()(cols[c]));
    for (int a = 0; a < (1 << q); ++a) {
      w(embed[a], static_cast<Eigen::Index>(c)) =
          weight * es.eigenvectors()(a, cols[c]);
    }
  }
  const CMatrix evolved = evolution.evolve_columns(w, time);
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  const std::vector<int> keep(receivers.begin(), receivers.end());
  CMatrix out = CMatrix::Zero(Eigen::Index{1} << receivers.size(),
                              Eigen::Index{1} << receivers.size());
  for (Eigen::Index c = 0; c < evolved.cols(); ++c) {
    out += partial_trace_pure(evolved.col(c), keep, dims);
  }
  return DensityMatrix(std::move(out));
}

double magnetization_expectation(const CVector& psi) {
  const int n = qubit_count(psi.size());
  double m = 0.0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    m += std::norm(psi(b)) * (2.0 * std::popcount(static_cast<std::uint64_t>(b)) - n);
  }
  return m;
}

double magnetization_expectation(const CMatrix& rho) {
  require(rho.rows() == rho.cols(), "state matrix must be square");
  const int n = qubit_count(rho.rows());
  double m = 0.0;
  for (Eigen::Index b = 0; b < rho.rows(); ++b) {
    m += rho(b, b).real() * (2.0 * std::popcount(static_cast<std::uint64_t>(b)) - n);
  }
  return m;
}

}  // namespace spinmap::oracle
