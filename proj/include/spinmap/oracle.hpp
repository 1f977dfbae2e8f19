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

// Dense evolution of the whole 2^N-dimensional network. Serves as ground
// truth for the sector engine and for every reduced map. The Hamiltonian is
// assembled from explicit Pauli-string actions on computational basis
// states and shares no code with the sector construction.

#include <span>
#include <vector>

#include "spinmap/quantum_map.hpp"
#include "spinmap/spin_network.hpp"
#include "spinmap/types.hpp"

namespace spinmap::oracle {

inline constexpr int kMaxSites = 14;

/// Basis index of a configuration in Kronecker order, site 0 most
/// significant.
Eigen::Index basis_index(SiteMask excited, int site_count);

/// Dense Hamiltonian in the computational basis. Throws
/// std::invalid_argument above kMaxSites.
RMatrix full_hamiltonian(const SpinNetwork& network);

/// Spectral decomposition of the full Hamiltonian, reusable across times.
class FullEvolution {
 public:
  explicit FullEvolution(const SpinNetwork& network);

  int site_count() const { return sites_; }
  const RVector& energies() const { return energies_; }

  CMatrix unitary(double time) const;
  CVector evolve(const CVector& psi, double time) const;
  /// Evolves every column of a state matrix.
  CMatrix evolve_columns(const CMatrix& columns, double time) const;
  CMatrix evolve_density(const CMatrix& rho, double time) const;

 private:
  int sites_;
  RVector energies_;
  RMatrix vectors_;
};

CVector full_evolve(const SpinNetwork& network, const CVector& psi, double time);
CMatrix full_evolve(const SpinNetwork& network, const CMatrix& rho, double time);

/// Sender state on `senders` (first listed site is the most significant
/// qubit of rho_s), all other sites in |0>, evolved and reduced onto
/// `receivers` in the listed order.
DensityMatrix reduced_output(const SpinNetwork& network, const DensityMatrix& rho_s,
                             std::span<const Site> senders,
                             std::span<const Site> receivers, double time);
DensityMatrix reduced_output(const FullEvolution& evolution,
                             const DensityMatrix& rho_s,
                             std::span<const Site> senders,
                             std::span<const Site> receivers, double time);

/// sum_i <Z_i> with Z|0> = -|0>.
double magnetization_expectation(const CVector& psi);
double magnetization_expectation(const CMatrix& rho);

}  // namespace spinmap::oracle
