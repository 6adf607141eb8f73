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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "corrq/quantum.hpp"
#include "sim.hpp"

namespace corrq::quantum {

using linalg::Complex;
using linalg::ComplexMatrix;

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void QuantumState::validate(int player_count, double tol) const {
  if (qubit_count < 0 || qubit_count > linalg::kDefaultMaxQubits) {
    throw InputError("state has " + std::to_string(qubit_count) + " qubits, outside [0, " +
                     std::to_string(linalg::kDefaultMaxQubits) + "]");
  }
  if (amplitudes.size() != (1ULL << qubit_count)) {
    throw InputError("amplitude count does not match 2^qubits");
  }
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InputError("non-finite amplitude");
    }
  }
  double n = norm();
  if (std::abs(n - 1.0) > tol) {
    std::ostringstream os;
    os << "state norm is " << n << ", not 1";
    throw InputError(os.str());
  }
  if (static_cast<int>(partition.size()) != qubit_count) {
    throw InputError("partition must assign every qubit to a player");
  }
  for (int owner : partition) {
    if (owner < 0 || owner >= player_count) throw InputError("partition owner out of range");
  }
}

std::vector<int> QuantumState::register_of(int player) const {
  std::vector<int> out;
  for (int q = 0; q < qubit_count; ++q) {
    if (partition[q] == player) out.push_back(q);
  }
  return out;
}

ComplexMatrix gate_matrix(const Gate& gate) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  if (gate.name == "H") return ComplexMatrix::from_rows({{s, s}, {s, -s}});
  if (gate.name == "X") return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  if (gate.name == "Y") return ComplexMatrix::from_rows({{0, -i}, {i, 0}});
  if (gate.name == "Z") return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
  if (gate.name == "S") return ComplexMatrix::from_rows({{1, 0}, {0, i}});
  if (gate.name == "T") {
    return ComplexMatrix::from_rows({{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4.0)}});
  }
  if (gate.name == "CNOT") {
    return ComplexMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  }
  if (gate.name == "unitary") {
    const ComplexMatrix& u = gate.matrix;
    if (!u.is_square() || u.rows() == 0) throw InputError("explicit gate matrix must be square");
    int dim = u.rows();
    if ((dim & (dim - 1)) != 0) throw InputError("explicit gate dimension must be a power of two");
    ComplexMatrix gram = u.adjoint() * u;
    if (linalg::max_abs_diff(gram, ComplexMatrix::identity(dim)) > 1e-9) {
      throw InputError("explicit gate matrix is not unitary within 1e-9");
    }
    return u;
  }
  throw InputError("unknown gate '" + gate.name + "'");
}

namespace {

int expected_targets(const std::string& name, const ComplexMatrix& matrix) {
  if (name == "CNOT") return 2;
  if (name == "unitary") {
    int dim = matrix.rows();
    int k = 0;
    while ((1 << k) < dim) ++k;
    return k;
  }
  return 1;
}

}  // namespace

void QceInstance::validate(int max_qubits) const {
  game.validate();
  state.validate(game.players);
  if (static_cast<int>(circuits.size()) != game.players) {
    throw InputError("instance needs one circuit per player");
  }

  long long total = state.qubit_count;
  for (int p = 0; p < game.players; ++p) {
    const PlayerCircuit& c = circuits[p];
    if (c.owner != p) throw InputError("circuit list must be ordered by owner");
    if (c.ancilla_count < 0) throw InputError("negative ancilla count");
    total += c.ancilla_count;

    auto reg = state.register_of(p);
    auto in_scope = [&](int t) {
      if (t >= state.qubit_count) return t - state.qubit_count < c.ancilla_count;
      return std::find(reg.begin(), reg.end(), t) != reg.end();
    };

    for (const Gate& gate : c.gates) {
      ComplexMatrix m = gate_matrix(gate);  // validates the gate itself
      int want = expected_targets(gate.name, m);
      if (static_cast<int>(gate.targets.size()) != want) {
        throw InputError("gate '" + gate.name + "' expects " + std::to_string(want) + " targets");
      }
      for (int t : gate.targets) {
        if (t < 0 || !in_scope(t)) {
          throw InputError(game.player_name(p) + "'s circuit touches qubit " + std::to_string(t) +
                           " outside his register and ancillas");
        }
      }
    }

    std::vector<int> outs = c.output_qubits;
    std::sort(outs.begin(), outs.end());
    if (std::adjacent_find(outs.begin(), outs.end()) != outs.end()) {
      throw InputError("duplicate output qubit");
    }
    for (int t : c.output_qubits) {
      if (t < 0 || !in_scope(t)) {
        throw InputError(game.player_name(p) + "'s output qubit " + std::to_string(t) +
                         " lies outside his register and ancillas");
      }
    }

    size_t k = c.output_qubits.size();
    if (k > 20) throw InputError("too many output qubits");
    if (c.action_map.size() != (1ULL << k)) {
      throw InputError(game.player_name(p) + "'s action map must cover every " +
                       std::to_string(k) + "-bit outcome");
    }
    std::map<std::string, int> hits;
    for (const auto& [bits, action] : c.action_map) {
      if (bits.size() != k || bits.find_first_not_of("01") != std::string::npos) {
        throw InputError("action map key '" + bits + "' is not a " + std::to_string(k) +
                         "-bit string");
      }
      hits[action]++;
      game.action_index(p, action);  // throws on unknown labels
    }
    if ((1LL << k) == game.action_count(p)) {
      for (const auto& [action, count] : hits) {
        if (count != 1) {
          throw InputError("action map of " + game.player_name(p) + " is not a bijection");
        }
      }
    }
  }
  if (total > max_qubits) {
    throw InputError("instance needs " + std::to_string(total) +
                     " qubits with ancillas, above the cap of " + std::to_string(max_qubits));
  }
}

bool QceInstance::is_canonical() const {
  for (int p = 0; p < game.players; ++p) {
    const PlayerCircuit& c = circuits[p];
    if (!c.gates.empty() || c.ancilla_count != 0) return false;
    int count = game.action_count(p);
    if ((count & (count - 1)) != 0) return false;
    int k = 0;
    while ((1 << k) < count) ++k;
    if (static_cast<int>(c.output_qubits.size()) != k) return false;
  }
  return true;
}

QceInstance QceInstance::canonical(games::NormalFormGame game, QuantumState state) {
  game.validate();
  state.validate(game.players);
  QceInstance inst;
  inst.game = std::move(game);
  inst.state = std::move(state);
  for (int p = 0; p < inst.game.players; ++p) {
    int count = inst.game.action_count(p);
    if ((count & (count - 1)) != 0) {
      throw InputError(inst.game.player_name(p) + " has " + std::to_string(count) +
                       " actions; canonical analysis needs a power of two");
    }
    int k = 0;
    while ((1 << k) < count) ++k;
    auto reg = inst.state.register_of(p);
    if (static_cast<int>(reg.size()) < k) {
      throw InputError(inst.game.player_name(p) + " holds " + std::to_string(reg.size()) +
                       " qubits but needs " + std::to_string(k) + " to select an action");
    }
    PlayerCircuit c;
    c.owner = p;
    c.output_qubits.assign(reg.begin(), reg.begin() + k);
    for (int v = 0; v < count; ++v) {
      std::string bits;
      for (int j = k - 1; j >= 0; --j) bits += ((v >> j) & 1) ? '1' : '0';
      c.action_map[bits] = inst.game.actions[p][v];
    }
    inst.circuits.push_back(std::move(c));
  }
  inst.validate();
  return inst;
}

namespace detail {

long long place_bits(const std::vector<int>& qubits, long long value, int n) {
  long long ix = 0;
  for (size_t j = 0; j < qubits.size(); ++j) {
    if ((value >> (qubits.size() - 1 - j)) & 1) ix |= 1LL << (n - 1 - qubits[j]);
  }
  return ix;
}

std::string bits_at(long long index, const std::vector<int>& qubits, int n) {
  std::string out;
  out.reserve(qubits.size());
  for (int q : qubits) out += bit_of(index, q, n) ? '1' : '0';
  return out;
}

double norm_squared(const Amps& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

namespace {

void apply_single(Amps& amps, int n, const ComplexMatrix& u, int q) {
  const long long stride = 1LL << (n - 1 - q);
  const long long dim = 1LL << n;
  for (long long base = 0; base < dim; ++base) {
    if (base & stride) continue;
    Complex a0 = amps[base];
    Complex a1 = amps[base | stride];
    amps[base] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[base | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_cnot(Amps& amps, int n, int control, int target) {
  const long long cbit = 1LL << (n - 1 - control);
  const long long tbit = 1LL << (n - 1 - target);
  const long long dim = 1LL << n;
  for (long long i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  }
}

void apply_general(Amps& amps, int n, const ComplexMatrix& u, const std::vector<int>& targets) {
  const int k = static_cast<int>(targets.size());
  const long long sub = 1LL << k;
  const long long dim = 1LL << n;
  std::vector<long long> offsets(sub);
  for (long long v = 0; v < sub; ++v) offsets[v] = place_bits(targets, v, n);
  long long mask = 0;
  for (long long v = 0; v < sub; ++v) mask |= offsets[v];

  std::vector<Complex> in(sub), out(sub);
  for (long long base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (long long v = 0; v < sub; ++v) in[v] = amps[base | offsets[v]];
    for (long long r = 0; r < sub; ++r) {
      Complex acc = 0.0;
      for (long long v = 0; v < sub; ++v) {
        acc += u(static_cast<int>(r), static_cast<int>(v)) * in[v];
      }
      out[r] = acc;
    }
    for (long long v = 0; v < sub; ++v) amps[base | offsets[v]] = out[v];
  }
}

}  // namespace

void apply_gate(Amps& amps, int n, const Gate& gate, const std::vector<int>& targets) {
  for (int t : targets) {
    if (t < 0 || t >= n) throw InputError("gate target out of range after resolution");
  }
  if (gate.name == "CNOT") {
    apply_cnot(amps, n, targets[0], targets[1]);
    return;
  }
  ComplexMatrix u = gate_matrix(gate);
  if (targets.size() == 1) {
    apply_single(amps, n, u, targets[0]);
  } else {
    apply_general(amps, n, u, targets);
  }
}

std::vector<std::pair<std::string, double>> measure_distribution(const Amps& amps, int n,
                                                                 const std::vector<int>& qubits) {
  std::map<std::string, double> acc;
  const long long dim = 1LL << n;
  for (long long i = 0; i < dim; ++i) {
    double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    acc[bits_at(i, qubits, n)] += p;
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [bits, p] : acc) {
    if (p > 1e-15) out.emplace_back(bits, p);
  }
  return out;
}

double collapse(Amps& amps, int n, const std::vector<int>& qubits, const std::string& bits) {
  const long long dim = 1LL << n;
  double p = 0.0;
  for (long long i = 0; i < dim; ++i) {
    if (bits_at(i, qubits, n) == bits) p += std::norm(amps[i]);
  }
  if (p <= 0.0) return 0.0;
  double scale = 1.0 / std::sqrt(p);
  for (long long i = 0; i < dim; ++i) {
    if (bits_at(i, qubits, n) == bits) {
      amps[i] *= scale;
    } else {
      amps[i] = 0.0;
    }
  }
  return p;
}

void append_ancillas(Amps& amps, int& n, int count) {
  if (count <= 0) return;
  Amps next(amps.size() << count, Complex(0.0, 0.0));
  for (size_t i = 0; i < amps.size(); ++i) next[i << count] = amps[i];
  amps = std::move(next);
  n += count;
}

int resolve_target(int target, int base_n, int ancilla_base, int ancilla_count) {
  if (target < base_n) return target;
  int slot = target - base_n;
  if (slot >= ancilla_count) {
    throw InputError("ancilla slot " + std::to_string(slot) + " not declared by the circuit");
  }
  return ancilla_base + slot;
}

}  // namespace detail

}  // namespace corrq::quantum
