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

// Literal transcriptions of published map matrices and element tables.
// Rows and columns follow the printed vector order rho_00, rho_01, ...

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "spinmap/types.hpp"

namespace printed {

using spinmap::CMatrix;
using spinmap::Complex;

// One-qubit map with amplitude f.
CMatrix one_qubit(Complex f);

// Identity on an external qubit (first factor) times the one-qubit map.
CMatrix extended_one_qubit(Complex f);

// Two independent one-qubit maps, f on the first qubit and g on the second.
CMatrix dual_rail(Complex f, Complex g);

// Nonzero pattern of the generic two-qubit map.
using Mask = std::array<std::array<bool, 16>, 16>;
Mask two_qubit_mask();

// Amplitude accessors: single(a, b) = f_a^b, pair(a, b, c, d) = f_{ab}^{cd}.
struct Amplitudes {
  int sites = 0;
  std::function<Complex(int, int)> single;
  std::function<Complex(int, int, int, int)> pair;
};

struct Element {
  int out_a, out_b, in_a, in_b;  // A_{out_a out_b}^{in_a in_b}
  Complex value;
  bool suspect = false;
  std::string note;
};

// General table, senders (i, j) and receivers (n, m). Free indices k, l run
// over sites outside {n, m}; k < l for pairs.
std::vector<Element> general_table(const Amplitudes& amp, int i, int j, int n, int m);

// Storage table (receivers = senders = {i, j}). The printed labelling
// corresponds to sender order (j, i) and receiver order (i, j).
std::vector<Element> storage_table(const Amplitudes& amp, int i, int j);

}  // namespace printed
