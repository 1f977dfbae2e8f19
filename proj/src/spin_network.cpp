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

#include "spinmap/spin_network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinmap/kernels.hpp"

namespace spinmap {
namespace {

constexpr int kMaxSectorSites = 64;

SiteMask bit(Site s) { return SiteMask{1} << s; }

void check_coupling_matrix(const RMatrix& m, Eigen::Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument(std::string(name) + " couplings must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(name) + " couplings must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) {
      throw std::invalid_argument(std::string(name) +
                                  " couplings must have a zero diagonal");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) {
        throw std::invalid_argument(std::string(name) +
                                    " couplings must be symmetric");
      }
    }
  }
}

}  // namespace

SpinNetwork::SpinNetwork(RMatrix xy_couplings, RMatrix zz_couplings,
                         RVector fields)
    : xy_(std::move(xy_couplings)),
      zz_(std::move(zz_couplings)),
      fields_(std::move(fields)) {
  const Eigen::Index n = fields_.size();
  if (n < 1) throw std::invalid_argument("a spin network needs at least one site");
  if (!fields_.allFinite()) throw std::invalid_argument("fields must be finite");
  check_coupling_matrix(xy_, n, "XY");
  check_coupling_matrix(zz_, n, "ZZ");
}

SpinNetwork SpinNetwork::uniform_chain(int sites, double coupling,
                                       double anisotropy, double field) {
  if (sites < 1) throw std::invalid_argument("a chain needs at least one site");
  RMatrix xy = RMatrix::Zero(sites, sites);
  RMatrix zz = RMatrix::Zero(sites, sites);
  for (int i = 0; i + 1 < sites; ++i) {
    xy(i, i + 1) = xy(i + 1, i) = coupling;
    zz(i, i + 1) = zz(i + 1, i) = anisotropy;
  }
  return SpinNetwork(std::move(xy), std::move(zz), RVector::Constant(sites, field));
}

SpinNetwork SpinNetwork::chain(std::span<const double> bonds) {
  const int sites = static_cast<int>(bonds.size()) + 1;
  RMatrix xy = RMatrix::Zero(sites, sites);
  for (int i = 0; i + 1 < sites; ++i) xy(i, i + 1) = xy(i + 1, i) = bonds[i];
  return SpinNetwork(std::move(xy), RMatrix::Zero(sites, sites), RVector::Zero(sites));
}

double SpinNetwork::diagonal_energy(SiteMask excited) const {
  const int n = site_count();
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double si = (excited & bit(i)) ? 1.0 : -1.0;
    energy += fields_(i) * si;
    for (int j = i + 1; j < n; ++j) {
      if (zz_(i, j) == 0.0) continue;
      const double sj = (excited & bit(j)) ? 1.0 : -1.0;
      energy += zz_(i, j) * si * sj;
    }
  }
  return energy;
}

bool SpinNetwork::is_free_fermion_chain() const {
  const int n = site_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (zz_(i, j) != 0.0) return false;
      if (j != i + 1 && xy_(i, j) != 0.0) return false;
    }
  }
  return true;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return result;
}

SiteMask mask_of(std::span<const Site> sites) {
  SiteMask mask = 0;
  for (Site s : sites) {
    if (s < 0 || s >= kMaxSectorSites) throw std::out_of_range("site index out of range");
    if (mask & bit(s)) throw std::invalid_argument("repeated site in configuration");
    mask |= bit(s);
  }
  return mask;
}

ExcitationSector::ExcitationSector(int site_count, int excitations)
    : site_count_(site_count), excitations_(excitations) {
  if (site_count < 1 || site_count > kMaxSectorSites) {
    throw std::invalid_argument("site count must lie in [1, 64]");
  }
  if (excitations < 0 || excitations > site_count) {
    throw std::invalid_argument("excitation count " + std::to_string(excitations) +
                                " outside [0, " + std::to_string(site_count) + "]");
  }
  const std::size_t dim = binomial(site_count, excitations);
  masks_.reserve(dim);
  lookup_.reserve(dim);
  // Lexicographic enumeration of increasing index tuples.
  std::vector<int> pick(static_cast<std::size_t>(excitations));
  for (int i = 0; i < excitations; ++i) pick[i] = i;
  while (true) {
    SiteMask mask = 0;
    for (int s : pick) mask |= bit(s);
    lookup_.emplace(mask, masks_.size());
    masks_.push_back(mask);
    int pos = excitations - 1;
    while (pos >= 0 && pick[pos] == site_count - excitations + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int q = pos + 1; q < excitations; ++q) pick[q] = pick[q - 1] + 1;
  }
}

std::vector<Site> ExcitationSector::sites(std::size_t index) const {
  std::vector<Site> out;
  SiteMask mask = masks_.at(index);
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::size_t ExcitationSector::index_of(SiteMask mask) const {
  const auto it = lookup_.find(mask);
  if (it == lookup_.end()) {
    throw std::out_of_range("configuration is not in the " +
                            std::to_string(excitations_) + "-excitation sector");
  }
  return it->second;
}

std::size_t ExcitationSector::index_of(std::span<const Site> sites) const {
  for (Site s : sites) {
    if (s >= site_count_) throw std::out_of_range("site index out of range");
  }
  return index_of(mask_of(sites));
}

double SectorHamiltonian::hermiticity_deviation() const {
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  return (matrix - matrix.transpose()).cwiseAbs().maxCoeff() / scale;
}

SectorHamiltonian build_sector_hamiltonian(const SpinNetwork& network,
                                           int excitations) {
  const int n = network.site_count();
  ExcitationSector sector(n, excitations);
  const auto dim = static_cast<Eigen::Index>(sector.dimension());
  RMatrix h = RMatrix::Zero(dim, dim);
  const RMatrix& xy = network.xy_couplings();
  for (Eigen::Index col = 0; col < dim; ++col) {
    const SiteMask source = sector.mask(static_cast<std::size_t>(col));
    h(col, col) = network.diagonal_energy(source);
    for (int from = 0; from < n; ++from) {
      if (!(source & bit(from))) continue;
      for (int to = 0; to < n; ++to) {
        if ((source & bit(to)) || xy(from, to) == 0.0) continue;
        const SiteMask target = source ^ bit(from) ^ bit(to);
        h(static_cast<Eigen::Index>(sector.index_of(target)), col) += 2.0 * xy(from, to);
      }
    }
  }
  return SectorHamiltonian{std::move(sector), std::move(h)};
}

Complex AmplitudeTable::at(SiteMask target, SiteMask source) const {
  return amplitudes(static_cast<Eigen::Index>(sector.index_of(target)),
                    static_cast<Eigen::Index>(sector.index_of(source)));
}

double AmplitudeTable::unitarity_deviation() const {
  const auto dim = amplitudes.rows();
  return (amplitudes * amplitudes.adjoint() - CMatrix::Identity(dim, dim))
      .cwiseAbs()
      .maxCoeff();
}

double AmplitudeTable::completeness_deviation() const {
  double worst = 0.0;
  for (Eigen::Index s = 0; s < amplitudes.cols(); ++s) {
    worst = std::max(worst, std::abs(1.0 - amplitudes.col(s).squaredNorm()));
  }
  return worst;
}

SectorPropagator::SectorPropagator(const SpinNetwork& network, int excitations)
    : sector_(network.site_count(), excitations) {
  SectorHamiltonian block = build_sector_hamiltonian(network, excitations);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(block.matrix);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw std::runtime_error("sector eigendecomposition failed for k=" +
                             std::to_string(excitations));
  }
  energies_ = solver.eigenvalues();
  eigenvectors_t_ = solver.eigenvectors().transpose();
}

AmplitudeTable SectorPropagator::at(double time) const {
  if (!std::isfinite(time)) throw std::invalid_argument("time must be finite");
  const Eigen::Index dim = energies_.size();
  std::vector<double> re(static_cast<std::size_t>(dim));
  std::vector<double> im(static_cast<std::size_t>(dim));
  for (Eigen::Index l = 0; l < dim; ++l) {
    const double phase = energies_(l) * time;
    re[l] = std::cos(phase);
    im[l] = -std::sin(phase);
  }
  CMatrix f(dim, dim);
  const auto len = static_cast<std::size_t>(dim);
  // H_k is real symmetric, so exp(-i H_k t) is complex symmetric.
  for (Eigen::Index a = 0; a < dim; ++a) {
    const std::span<const double> row_a(eigenvectors_t_.col(a).data(), len);
    for (Eigen::Index b = a; b < dim; ++b) {
      const std::span<const double> row_b(eigenvectors_t_.col(b).data(), len);
      const Complex value = kernels::weighted_phase_sum(row_a, row_b, re, im);
      f(a, b) = value;
      f(b, a) = value;
    }
  }
  return AmplitudeTable{sector_, time, std::move(f)};
}

AmplitudeTable amplitudes(const SpinNetwork& network, int excitations,
                          double time) {
  return SectorPropagator(network, excitations).at(time);
}

AmplitudeTable relative_to_vacuum(const AmplitudeTable& table,
                                  const SpinNetwork& network) {
  if (table.sector.site_count() != network.site_count()) {
    throw std::invalid_argument("amplitude table and network disagree on size");
  }
  AmplitudeTable out = table;
  out.amplitudes *= std::polar(1.0, network.vacuum_energy() * table.time);
  return out;
}

Complex single_amplitude(const AmplitudeTable& one_excitation, Site source,
                         Site target) {
  if (one_excitation.sector.excitations() != 1) {
    throw std::invalid_argument("single_amplitude needs a one-excitation table");
  }
  const int n = one_excitation.sector.site_count();
  if (source < 0 || source >= n || target < 0 || target >= n) {
    throw std::out_of_range("site index out of range");
  }
  return one_excitation.at(bit(target), bit(source));
}

Complex pair_amplitude(const AmplitudeTable& two_excitation, Site i, Site j,
                       Site n, Site m) {
  if (two_excitation.sector.excitations() != 2) {
    throw std::invalid_argument("pair_amplitude needs a two-excitation table");
  }
  const int sites = two_excitation.sector.site_count();
  if (!(i < j) || !(n < m)) {
    throw std::invalid_argument("pair indices must satisfy i < j and n < m");
  }
  if (i < 0 || n < 0 || j >= sites || m >= sites) {
    throw std::out_of_range("site index out of range");
  }
  return two_excitation.at(bit(n) | bit(m), bit(i) | bit(j));
}

Complex determinant_pair_amplitude(const SpinNetwork& network,
                                   const AmplitudeTable& one_excitation, Site i,
                                   Site j, Site n, Site m) {
  if (!network.is_free_fermion_chain()) {
    throw std::invalid_argument(
        "determinant amplitudes need an open nearest-neighbour chain without ZZ terms");
  }
  if (one_excitation.sector.site_count() != network.site_count()) {
    throw std::invalid_argument("amplitude table does not match the network");
  }
  if (!(i < j) || !(n < m)) {
    throw std::invalid_argument("pair indices must satisfy i < j and n < m");
  }
  const Complex det = single_amplitude(one_excitation, i, n) *
                          single_amplitude(one_excitation, j, m) -
                      single_amplitude(one_excitation, i, m) *
                          single_amplitude(one_excitation, j, n);
  // Each sector carries the vacuum energy once; the product of two
  // one-excitation amplitudes carries it twice.
  const double phase = network.vacuum_energy() * one_excitation.time;
  return std::polar(1.0, phase) * det;
}

}  // namespace spinmap
