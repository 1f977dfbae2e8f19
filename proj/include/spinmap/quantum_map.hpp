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

#include <span>
#include <string_view>
#include <vector>

#include "spinmap/spin_network.hpp"
#include "spinmap/types.hpp"

namespace spinmap {

/// Hermitian, unit-trace, positive semidefinite matrix. Construction checks
/// all three within tolerance and throws std::invalid_argument otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries, double tolerance = tol::kState);

  static DensityMatrix from_pure(const CVector& psi);
  /// Computational basis state from a bit string; "10" is |1>|0>.
  static DensityMatrix from_bits(std::string_view bits);
  static DensityMatrix maximally_mixed(int dimension);

  int dimension() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double min_eigenvalue() const { return min_eigenvalue_; }
  double purity() const;

 private:
  CMatrix m_;
  double min_eigenvalue_ = 0.0;
};

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubit_count(Eigen::Index dimension);

/// Operator-sum representation rho -> sum_k E_k rho E_k^dagger.
class KrausSet {
 public:
  /// Operators must be nonempty and share their shape. With
  /// `assert_complete`, sum E^dagger E = I is checked to 1e-10.
  explicit KrausSet(std::vector<CMatrix> operators, bool assert_complete = true);

  int input_dim() const { return static_cast<int>(ops_.front().cols()); }
  int output_dim() const { return static_cast<int>(ops_.front().rows()); }
  const std::vector<CMatrix>& operators() const { return ops_; }
  bool completeness_asserted() const { return complete_; }
  double completeness_deviation() const;

 private:
  std::vector<CMatrix> ops_;
  bool complete_;
};

/// Matrix A acting on row-major vectorized density matrices:
/// Phi(rho)_{ij} = sum_{nm} A[(i,j),(n,m)] rho_{nm}, with (i,j) -> i*d + j.
class Superoperator {
 public:
  Superoperator(CMatrixRowMajor entries, int input_dim, int output_dim);

  static Superoperator identity(int dim);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  const CMatrixRowMajor& matrix() const { return a_; }

  /// A_{ij}^{nm}.
  Complex element(int i, int j, int n, int m) const {
    return a_(i * output_dim_ + j, n * input_dim_ + m);
  }

  /// max |sum_i A_{ii}^{nm} - delta_nm|.
  double trace_preservation_deviation() const;
  /// max |conj(A_{ij}^{nm}) - A_{ji}^{mn}|.
  double hermiticity_preservation_deviation() const;

 private:
  CMatrixRowMajor a_;
  int input_dim_;
  int output_dim_;
};

/// Unnormalized Choi matrix sum_{nm} |n><m| (x) Phi(|n><m|), input factor
/// first, so entry [(n,i),(m,j)] equals A_{ij}^{nm}.
struct ChoiMatrix {
  CMatrix entries;
  int input_dim = 0;
  int output_dim = 0;
};

struct CptpVerdict {
  bool cptp = false;
  double min_eigenvalue = 0.0;   // witness for complete positivity
  double trace_deviation = 0.0;  // max |Tr_out C - I|
};

enum class IdentitySide { kLeft, kRight };

/// Ordered pair of distinct sites. The first site is the more significant
/// qubit: |01> means the second site is excited.
struct SitePair {
  Site first = 0;
  Site second = 0;
};

Superoperator superop_from_kraus(const KrausSet& kraus);

/// Kraus pair E_0 = [[1,0],[0,f]], E_1 = [[0,0],[sqrt(1-|f|^2),0]]. The
/// environment-indexed family collapses into E_1 because only
/// sum_k |f^k|^2 = 1 - |f|^2 reaches the output.
KrausSet one_qubit_kraus(Complex f);

/// Closed-form superoperator of the one-qubit map for amplitude f. No range
/// check on |f|, so non-physical amplitudes can be examined.
Superoperator one_qubit_superoperator(Complex f);

/// id (x) Phi for kLeft, Phi (x) id for kRight.
Superoperator extend_with_identity(const Superoperator& map, IdentitySide side,
                                   int identity_dim = 2);

Superoperator tensor(const Superoperator& first, const Superoperator& second);
KrausSet tensor(const KrausSet& first, const KrausSet& second);

/// Two-qubit Kraus family for senders (i, j) and receivers (n, m):
/// E_0, E_1^k for k outside the receivers, E_2^{kl} for pairs outside the
/// receivers. Both tables must come from the same network and time.
KrausSet two_qubit_kraus(const AmplitudeTable& one_excitation,
                         const AmplitudeTable& two_excitation, SitePair senders,
                         SitePair receivers);

/// Two-qubit superoperator evaluated element by element from the closed-form
/// table in terms of f_a^b and f_{ij}^{ab}, summing environment indices over
/// all sites outside the receivers.
Superoperator two_qubit_map_elements(const AmplitudeTable& one_excitation,
                                     const AmplitudeTable& two_excitation,
                                     SitePair senders, SitePair receivers);

/// Reduced map for arbitrary sender and receiver site lists with the rest of
/// the network fully polarized. `tables[k]` must be the k-excitation table
/// for k = 0..senders.size(). One Kraus operator per environment
/// configuration of at most senders.size() excitations.
KrausSet network_kraus(std::span<const AmplitudeTable> tables,
                       std::span<const Site> senders,
                       std::span<const Site> receivers);

/// Caches sector spectra so the reduced map can be rebuilt at many times.
class ReducedMapBuilder {
 public:
  ReducedMapBuilder(const SpinNetwork& network, std::vector<Site> senders,
                    std::vector<Site> receivers);

  const std::vector<Site>& senders() const { return senders_; }
  const std::vector<Site>& receivers() const { return receivers_; }

  std::vector<AmplitudeTable> tables(double time) const;
  KrausSet kraus(double time) const;
  Superoperator superoperator(double time) const;

 private:
  std::vector<Site> senders_;
  std::vector<Site> receivers_;
  std::vector<SectorPropagator> propagators_;
};

/// Throws std::invalid_argument on a dimension mismatch or when the output
/// is not a valid state within tolerance.
DensityMatrix apply(const Superoperator& map, const DensityMatrix& rho);
DensityMatrix apply(const KrausSet& map, const DensityMatrix& rho);
/// Unchecked application on a raw matrix.
CMatrix apply_raw(const Superoperator& map, const CMatrix& rho);

ChoiMatrix choi(const Superoperator& map);
CptpVerdict is_cptp(const Superoperator& map, double tolerance = tol::kPsdFloor);

/// Minimal Kraus set from the Choi eigendecomposition; eigenvalues at or
/// below `cutoff` are dropped.
KrausSet kraus_from_choi(const ChoiMatrix& choi, double cutoff = 1e-13);

/// Partial trace keeping the listed factors, in the listed order.
CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep,
                      std::span<const int> dims);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep,
                            std::span<const int> dims);
/// Reduced state of a pure vector.
CMatrix partial_trace_pure(const CVector& psi, std::span<const int> keep,
                           std::span<const int> dims);

/// Qubit-only shorthands.
CMatrix reduce_qubits(const CMatrix& rho, std::span<const int> keep);
CMatrix reduce_qubits_pure(const CVector& psi, std::span<const int> keep);

/// Selection rule of a U(1) reduced map: A_{ij}^{nm} can be nonzero only if
/// both branches lose the same number of excitations to the environment,
/// exc(n) - exc(i) = exc(m) - exc(j) >= 0, with exc the number of set bits.
bool u1_element_allowed(unsigned i, unsigned j, unsigned n, unsigned m);

/// Largest |A| over entries the selection rule forbids.
double u1_selection_violation(const Superoperator& map);

/// (1/2) * sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Smallest eigenvalue of the Hermitian part.
double min_hermitian_eigenvalue(const CMatrix& m);

}  // namespace spinmap
