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

#include <random>
#include <vector>

#include "spinmap/entanglement.hpp"
#include "spinmap/quantum_map.hpp"
#include "spinmap/spin_network.hpp"

namespace spinmap::random {

using Rng = std::mt19937_64;

struct NetworkOptions {
  double coupling_scale = 1.0;
  double edge_probability = 0.6;  // per unordered pair, beyond a spanning path
  bool anisotropy = true;
  bool fields = true;
};

/// Random graph containing at least a random spanning path, so the network
/// is connected. XY couplings, ZZ couplings and fields uniform in
/// [-scale, scale].
SpinNetwork network(Rng& rng, int sites, const NetworkOptions& options = {});

CVector pure_state(Rng& rng, Eigen::Index dimension);
/// Ginibre ensemble of the given rank (defaults to full rank).
DensityMatrix density(Rng& rng, int dimension, int rank = 0);
/// Haar-random unitary via QR with phase correction.
CMatrix unitary(Rng& rng, int dimension);
/// Random complete Kraus set obtained from a random isometry.
KrausSet kraus(Rng& rng, int input_dim, int output_dim, int count);
XState x_state(Rng& rng);
/// `count` distinct sites out of `sites`, in random order.
std::vector<Site> distinct_sites(Rng& rng, int sites, int count);

}  // namespace spinmap::random
