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

#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "spinmap/types.hpp"

namespace spinmap {

/// Coupling graph of a U(1)-symmetric spin-1/2 network,
///
///   H = sum_{i<j} [ J_ij (X_i X_j + Y_i Y_j) + D_ij Z_i Z_j ] + sum_i h_i Z_i,
///
/// written with Pauli matrices. Each unordered pair enters once, so an XY bond
/// of strength J hops an excitation with amplitude 2J.
class SpinNetwork {
 public:
  /// Throws std::invalid_argument unless the matrices are square, symmetric,
  /// zero on the diagonal, and sized consistently with `fields`.
  SpinNetwork(RMatrix xy_couplings, RMatrix zz_couplings, RVector fields);

  /// Open chain with uniform nearest-neighbour couplings.
  static SpinNetwork uniform_chain(int sites, double coupling,
                                   double anisotropy = 0.0, double field = 0.0);

  /// Open XX chain with bond i coupling sites i and i+1.
  static SpinNetwork chain(std::span<const double> bonds);

  int site_count() const { return static_cast<int>(fields_.size()); }
  const RMatrix& xy_couplings() const { return xy_; }
  const RMatrix& zz_couplings() const { return zz_; }
  const RVector& fields() const { return fields_; }

  /// Diagonal energy of a configuration: sum h_i s_i + sum_{i<j} D_ij s_i s_j
  /// with s = +1 on excited sites and -1 elsewhere.
  double diagonal_energy(SiteMask excited) const;

  /// Energy of the fully polarized reference state.
  double vacuum_energy() const { return diagonal_energy(0); }

  /// Open chain with only nearest-neighbour XY bonds and no ZZ terms. On such
  /// networks two-excitation amplitudes factor into 2x2 determinants.
  bool is_free_fermion_chain() const;

 private:
  RMatrix xy_;
  RMatrix zz_;
  RVector fields_;
};

/// Fixed-magnetization subspace with k flipped spins. Basis entries are
/// k-element site subsets in lexicographic order of their sorted site lists.
class ExcitationSector {
 public:
  /// Throws std::invalid_argument unless 0 <= k <= site_count <= 64.
  ExcitationSector(int site_count, int excitations);

  int site_count() const { return site_count_; }
  int excitations() const { return excitations_; }
  std::size_t dimension() const { return masks_.size(); }

  SiteMask mask(std::size_t index) const { return masks_[index]; }
  std::vector<Site> sites(std::size_t index) const;

  /// Position of a configuration; throws std::out_of_range if the mask does
  /// not belong to this sector.
  std::size_t index_of(SiteMask mask) const;
  std::size_t index_of(std::span<const Site> sites) const;
  bool contains(SiteMask mask) const { return lookup_.contains(mask); }

 private:
  int site_count_;
  int excitations_;
  std::vector<SiteMask> masks_;
  std::unordered_map<SiteMask, std::size_t> lookup_;
};

SiteMask mask_of(std::span<const Site> sites);
std::size_t binomial(int n, int k);

/// Sector block of the Hamiltonian. The couplings are real, so the block is
/// real symmetric.
struct SectorHamiltonian {
  ExcitationSector sector;
  RMatrix matrix;

  double hermiticity_deviation() const;
};

SectorHamiltonian build_sector_hamiltonian(const SpinNetwork& network,
                                           int excitations);

/// Transition amplitudes within one sector at time t (hbar = 1):
/// amplitudes(target, source) = <target| exp(-i H_k t) |source>.
struct AmplitudeTable {
  ExcitationSector sector;
  double time = 0.0;
  CMatrix amplitudes;

  Complex at(SiteMask target, SiteMask source) const;
  double unitarity_deviation() const;
  /// Largest |1 - sum_n |f[n, s]|^2| over source columns s.
  double completeness_deviation() const;
};

/// Spectral decomposition of one sector block, reusable across times.
class SectorPropagator {
 public:
  SectorPropagator(const SpinNetwork& network, int excitations);

  const ExcitationSector& sector() const { return sector_; }
  const RVector& energies() const { return energies_; }

  /// exp(-i H_k t) as an amplitude table. Throws std::invalid_argument for a
  /// non-finite time.
  AmplitudeTable at(double time) const;

 private:
  ExcitationSector sector_;
  RVector energies_;
  // Eigenvectors stored transposed: column a holds row a of the eigenvector
  // matrix, so each amplitude is a contiguous weighted sum over eigenvalues.
  RMatrix eigenvectors_t_;
};

AmplitudeTable amplitudes(const SpinNetwork& network, int excitations,
                          double time);

/// Same table with the vacuum phase removed, i.e. multiplied by
/// exp(i E_vac t). The closed-form one- and two-qubit maps put 1 in the
/// vacuum slot and need amplitudes in this gauge whenever h or D are nonzero.
AmplitudeTable relative_to_vacuum(const AmplitudeTable& table,
                                  const SpinNetwork& network);

/// f_source^target from a one-excitation table.
Complex single_amplitude(const AmplitudeTable& one_excitation, Site source,
                         Site target);

/// f_{ij}^{nm} = <{n,m}| exp(-i H_2 t) |{i,j}> from a two-excitation table.
/// Requires i < j and n < m.
Complex pair_amplitude(const AmplitudeTable& two_excitation, Site i, Site j,
                       Site n, Site m);

/// Same amplitude from one-excitation data only, valid on free-fermion chains:
/// exp(i E_vac t) (f_i^n f_j^m - f_i^m f_j^n). Throws std::invalid_argument
/// when the network is not a free-fermion chain.
Complex determinant_pair_amplitude(const SpinNetwork& network,
                                   const AmplitudeTable& one_excitation, Site i,
                                   Site j, Site n, Site m);

}  // namespace spinmap
