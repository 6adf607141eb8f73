// Copyright 2026 The corrq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORRQ_SRC_SIM_HPP_
#define CORRQ_SRC_SIM_HPP_

#include <string>
#include <utility>
#include <vector>

#include "corrq/quantum.hpp"

namespace corrq::quantum::detail {

using Amps = std::vector<linalg::Complex>;

// Qubit q of an n-qubit register occupies bit (n - 1 - q) of a basis index.
inline int bit_of(long long index, int qubit, int n) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1);
}

// Index contribution of setting the listed qubits to the bits of `value`,
// most-significant-first.
long long place_bits(const std::vector<int>& qubits, long long value, int n);

std::string bits_at(long long index, const std::vector<int>& qubits, int n);

double norm_squared(const Amps& amps);

// Applies `gate` with already-resolved global targets.
void apply_gate(Amps& amps, int n, const Gate& gate, const std::vector<int>& targets);

// Exact joint measurement distribution of the listed qubits, keyed by the
// outcome bitstring (qubit order as listed). Outcomes below 1e-15 dropped.
std::vector<std::pair<std::string, double>> measure_distribution(const Amps& amps, int n,
                                                                 const std::vector<int>& qubits);

// Projects onto the outcome and renormalizes; returns the outcome probability
// (0 if the outcome has no support, leaving amps untouched).
double collapse(Amps& amps, int n, const std::vector<int>& qubits, const std::string& bits);

// Appends `count` fresh |0> qubits (least significant side).
void append_ancillas(Amps& amps, int& n, int count);

// Resolves a circuit target: global index, or base_n + slot for an ancilla
// slot mapped to the freshly appended block starting at `ancilla_base`.
int resolve_target(int target, int base_n, int ancilla_base, int ancilla_count);

}  // namespace corrq::quantum::detail

#endif  // CORRQ_SRC_SIM_HPP_
