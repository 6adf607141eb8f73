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
#include <random>
#include <sstream>

#include "corrq/quantum.hpp"
#include "sim.hpp"

namespace corrq::quantum {

using detail::Amps;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

constexpr double kNormDriftTol = 1e-7;
constexpr double kProbabilityFloor = 1e-12;

// Instance with ancillas appended to the joint state and every circuit
// reference resolved to a global qubit index.
struct Extended {
  Amps amps;
  int n = 0;
  std::vector<int> owner_of;                   // per qubit
  std::vector<std::vector<int>> gate_targets;  // per player, flattened per gate
  std::vector<std::vector<int>> outputs;       // per player
};

Extended extend_instance(const QceInstance& inst, int max_qubits) {
  inst.validate(max_qubits);
  const int base_n = inst.state.qubit_count;

  Extended ext;
  ext.amps = inst.state.amplitudes;
  ext.n = base_n;
  ext.owner_of = inst.state.partition;

  std::vector<int> ancilla_base(inst.game.players);
  for (int p = 0; p < inst.game.players; ++p) {
    ancilla_base[p] = ext.n;
    int count = inst.circuits[p].ancilla_count;
    detail::append_ancillas(ext.amps, ext.n, count);
    for (int k = 0; k < count; ++k) ext.owner_of.push_back(p);
  }

  ext.gate_targets.resize(inst.game.players);
  ext.outputs.resize(inst.game.players);
  for (int p = 0; p < inst.game.players; ++p) {
    const PlayerCircuit& c = inst.circuits[p];
    for (const Gate& g : c.gates) {
      for (int t : g.targets) {
        ext.gate_targets[p].push_back(
            detail::resolve_target(t, base_n, ancilla_base[p], c.ancilla_count));
      }
    }
    for (int t : c.output_qubits) {
      ext.outputs[p].push_back(detail::resolve_target(t, base_n, ancilla_base[p], c.ancilla_count));
    }
  }
  return ext;
}

void apply_player_unitaries(Extended& ext, const QceInstance& inst, int player) {
  size_t cursor = 0;
  for (const Gate& g : inst.circuits[player].gates) {
    std::vector<int> targets(ext.gate_targets[player].begin() + cursor,
                             ext.gate_targets[player].begin() + cursor + g.targets.size());
    cursor += g.targets.size();
    detail::apply_gate(ext.amps, ext.n, g, targets);
  }
}

void check_norm_drift(const Extended& ext) {
  double drift = std::abs(detail::norm_squared(ext.amps) - 1.0);
  if (drift > kNormDriftTol) {
    std::ostringstream os;
    os << "state norm drifted by " << drift << " after gate application; a non-unitary gate "
       << "slipped through";
    throw NumericError(os.str());
  }
}

games::OutcomeDistribution joint_outcome_distribution(const Extended& ext,
                                                      const QceInstance& inst) {
  std::vector<int> all_outputs;
  std::vector<std::pair<size_t, size_t>> spans;  // per player: [begin, end) in the bitstring
  for (int p = 0; p < inst.game.players; ++p) {
    size_t begin = all_outputs.size();
    all_outputs.insert(all_outputs.end(), ext.outputs[p].begin(), ext.outputs[p].end());
    spans.emplace_back(begin, all_outputs.size());
  }

  std::map<std::vector<int>, double> acc;
  for (const auto& [bits, p] : detail::measure_distribution(ext.amps, ext.n, all_outputs)) {
    std::vector<int> profile(inst.game.players);
    for (int i = 0; i < inst.game.players; ++i) {
      std::string sub = bits.substr(spans[i].first, spans[i].second - spans[i].first);
      profile[i] = inst.game.action_index(i, inst.circuits[i].action_map.at(sub));
    }
    acc[profile] += p;
  }

  games::OutcomeDistribution dist;
  dist.kind = games::OutcomeDistribution::Kind::action_profile;
  for (const auto& [profile, p] : acc) {
    if (p > 1e-15) dist.entries.emplace_back(profile, p);
  }
  return dist;
}

}  // namespace

games::OutcomeDistribution simulate_normal_qce_ordered(const QceInstance& inst,
                                                       const std::vector<int>& player_order,
                                                       int max_qubits) {
  Extended ext = extend_instance(inst, max_qubits);
  std::vector<bool> seen(inst.game.players, false);
  for (int p : player_order) {
    if (p < 0 || p >= inst.game.players || seen[p]) {
      throw InputError("player order must be a permutation of the players");
    }
    seen[p] = true;
    apply_player_unitaries(ext, inst, p);
  }
  for (bool s : seen) {
    if (!s) throw InputError("player order must be a permutation of the players");
  }
  check_norm_drift(ext);
  return joint_outcome_distribution(ext, inst);
}

games::OutcomeDistribution simulate_normal_qce(const QceInstance& inst, int max_qubits) {
  std::vector<int> order(inst.game.players);
  for (int p = 0; p < inst.game.players; ++p) order[p] = p;
  return simulate_normal_qce_ordered(inst, order, max_qubits);
}

QceInstance canonicalize(const QceInstance& inst, int max_qubits) {
  Extended ext = extend_instance(inst, max_qubits);
  for (int p = 0; p < inst.game.players; ++p) apply_player_unitaries(ext, inst, p);
  check_norm_drift(ext);

  QceInstance out;
  out.game = inst.game;
  out.state.qubit_count = ext.n;
  out.state.amplitudes = std::move(ext.amps);
  out.state.partition = std::move(ext.owner_of);
  for (int p = 0; p < inst.game.players; ++p) {
    PlayerCircuit c;
    c.owner = p;
    c.output_qubits = ext.outputs[p];
    c.action_map = inst.circuits[p].action_map;
    out.circuits.push_back(std::move(c));
  }
  out.validate(max_qubits);
  return out;
}

classical::CorrelatingDevice qce_to_ce(const QceInstance& inst) {
  inst.validate();
  if (!inst.is_canonical()) {
    throw InputError("qce_to_ce expects a canonical instance; run canonicalize first");
  }
  games::OutcomeDistribution dist = simulate_normal_qce(inst);
  classical::CorrelatingDevice device;
  for (const auto& [profile, p] : dist.entries) device.entries.push_back({profile, p});
  return device;
}

ConditionalStateFamily conditional_states(const QceInstance& inst, int player) {
  inst.validate();
  if (!inst.is_canonical()) {
    throw InputError("conditional_states expects a canonical instance; run canonicalize first");
  }
  if (player < 0 || player >= inst.game.players) throw InputError("player out of range");

  const int n = inst.state.qubit_count;
  std::vector<int> advice_qubits;  // opponents' outputs, player order
  std::vector<std::pair<size_t, size_t>> spans;
  std::vector<int> opponents;
  for (int p = 0; p < inst.game.players; ++p) {
    if (p == player) continue;
    opponents.push_back(p);
    size_t begin = advice_qubits.size();
    advice_qubits.insert(advice_qubits.end(), inst.circuits[p].output_qubits.begin(),
                         inst.circuits[p].output_qubits.end());
    spans.emplace_back(begin, advice_qubits.size());
  }

  std::vector<int> reg = inst.state.register_of(player);
  std::vector<int> rest;  // opponents' non-output qubits, traced out
  for (int q = 0; q < n; ++q) {
    if (inst.state.partition[q] == player) continue;
    if (std::find(advice_qubits.begin(), advice_qubits.end(), q) == advice_qubits.end()) {
      rest.push_back(q);
    }
  }

  const long long advice_dim = 1LL << advice_qubits.size();
  const long long reg_dim = 1LL << reg.size();
  const long long rest_dim = 1LL << rest.size();

  ConditionalStateFamily family;
  family.player = player;
  family.register_qubits = reg;

  for (long long o = 0; o < advice_dim; ++o) {
    long long obase = detail::place_bits(advice_qubits, o, n);
    ComplexMatrix acc(static_cast<int>(reg_dim), static_cast<int>(reg_dim));
    for (long long e = 0; e < rest_dim; ++e) {
      long long base = obase | detail::place_bits(rest, e, n);
      for (long long r = 0; r < reg_dim; ++r) {
        Complex ar = inst.state.amplitudes[base | detail::place_bits(reg, r, n)];
        if (ar == Complex(0.0, 0.0)) continue;
        for (long long c = 0; c < reg_dim; ++c) {
          Complex ac = inst.state.amplitudes[base | detail::place_bits(reg, c, n)];
          acc(static_cast<int>(r), static_cast<int>(c)) += ar * std::conj(ac);
        }
      }
    }
    double prob = acc.trace().real();
    if (prob <= kProbabilityFloor) continue;

    ConditionalEntry entry;
    entry.probability = prob;
    entry.state = acc * Complex(1.0 / prob, 0.0);
    std::string bits;
    for (size_t j = 0; j < advice_qubits.size(); ++j) {
      bits += ((o >> (advice_qubits.size() - 1 - j)) & 1) ? '1' : '0';
    }
    entry.advice_bits = bits;
    for (size_t k = 0; k < opponents.size(); ++k) {
      int opp = opponents[k];
      std::string sub = bits.substr(spans[k].first, spans[k].second - spans[k].first);
      entry.advice_actions.push_back(
          inst.game.action_index(opp, inst.circuits[opp].action_map.at(sub)));
    }
    family.entries.push_back(std::move(entry));
  }
  return family;
}

BinaryDeviationResult optimal_deviation_binary(const ConditionalStateFamily& family,
                                               const std::vector<std::array<double, 2>>& payoffs) {
  if (payoffs.size() != family.entries.size()) {
    throw InputError("optimal_deviation_binary: one payoff pair per conditional state required");
  }
  if (family.entries.empty()) throw InputError("optimal_deviation_binary: empty family");
  const int dim = family.entries.front().state.rows();

  BinaryDeviationResult result;
  result.m0 = ComplexMatrix(dim, dim);
  result.m1 = ComplexMatrix(dim, dim);
  for (size_t e = 0; e < family.entries.size(); ++e) {
    const ConditionalEntry& entry = family.entries[e];
    if (entry.state.rows() != dim) {
      throw InputError("optimal_deviation_binary: inconsistent register dimensions");
    }
    result.m0 += entry.state * Complex(entry.probability * payoffs[e][0], 0.0);
    result.m1 += entry.state * Complex(entry.probability * payoffs[e][1], 0.0);
  }

  ComplexMatrix diff = result.m0 - result.m1;
  // Hermitize against rounding before the spectral split.
  diff = (diff + diff.adjoint()) * Complex(0.5, 0.0);
  linalg::HermitianEigensystem sys = linalg::hermitian_eig(diff);

  result.measurement = ComplexMatrix(dim, dim);
  double positive_trace = 0.0;
  for (int k = 0; k < dim; ++k) {
    if (sys.eigenvalues[k] <= 1e-12) continue;
    positive_trace += sys.eigenvalues[k];
    for (int i = 0; i < dim; ++i) {
      Complex vik = sys.eigenvectors(i, k);
      for (int j = 0; j < dim; ++j) {
        result.measurement(i, j) += vik * std::conj(sys.eigenvectors(j, k));
      }
    }
  }
  result.value = result.m1.trace().real() + positive_trace;
  return result;
}

bool dual_certificate_check(const std::vector<ComplexMatrix>& m_list, const ComplexMatrix& y,
                            double on_path, double eps) {
  if (m_list.empty()) throw InputError("dual_certificate_check: no payoff operators");
  if (!y.is_hermitian(1e-9)) throw InputError("dual_certificate_check: Y is not Hermitian");
  for (const ComplexMatrix& m : m_list) {
    if (!m.is_hermitian(1e-9)) throw InputError("dual_certificate_check: M_x is not Hermitian");
    if (m.rows() != y.rows()) throw InputError("dual_certificate_check: dimension mismatch");
    ComplexMatrix gap = y - m;
    gap = (gap + gap.adjoint()) * Complex(0.5, 0.0);
    linalg::HermitianEigensystem sys = linalg::hermitian_eig(gap);
    if (sys.eigenvalues.back() < -eps) return false;
  }
  return y.trace().real() <= on_path + eps;
}

double QceReport::max_gain() const {
  double m = 0.0;
  for (const auto& p : players) m = std::max(m, p.gain);
  return m;
}

namespace {

// Deviation utilities for a player holding no qubits: the best constant
// response to the unconditional advice distribution.
PlayerAnalysis classical_best_response(const QceInstance& inst, int player,
                                       const ConditionalStateFamily& family, double on_path) {
  PlayerAnalysis a;
  a.player = player;
  a.method = PlayerAnalysis::Method::exact_classical;
  a.on_path = on_path;
  double best = 0.0;
  for (int x = 0; x < inst.game.action_count(player); ++x) {
    double value = 0.0;
    for (const ConditionalEntry& e : family.entries) {
      std::vector<int> profile;
      size_t k = 0;
      for (int p = 0; p < inst.game.players; ++p) {
        profile.push_back(p == player ? x : e.advice_actions[k++]);
      }
      value += e.probability * inst.game.payoff(profile, player);
    }
    if (x == 0 || value > best) best = value;
  }
  a.deviation_value = best;
  a.gain = best - on_path;
  return a;
}

std::vector<ComplexMatrix> payoff_operators(const QceInstance& inst, int player,
                                            const ConditionalStateFamily& family) {
  const int dim = family.entries.front().state.rows();
  std::vector<ComplexMatrix> ms(inst.game.action_count(player), ComplexMatrix(dim, dim));
  for (const ConditionalEntry& e : family.entries) {
    for (int x = 0; x < inst.game.action_count(player); ++x) {
      std::vector<int> profile;
      size_t k = 0;
      for (int p = 0; p < inst.game.players; ++p) {
        profile.push_back(p == player ? x : e.advice_actions[k++]);
      }
      ms[x] += e.state * Complex(e.probability * inst.game.payoff(profile, player), 0.0);
    }
  }
  return ms;
}

// Lower bound on the deviation value by measuring in sampled random bases
// and answering each outcome with its best action.
double sampled_deviation_value(const std::vector<ComplexMatrix>& ms, std::uint64_t seed,
                               int samples) {
  const int dim = ms.front().rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Random orthonormal basis by Gram-Schmidt on Gaussian vectors.
    std::vector<std::vector<Complex>> basis;
    while (static_cast<int>(basis.size()) < dim) {
      std::vector<Complex> v(dim);
      for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
      for (const auto& u : basis) {
        Complex overlap = 0.0;
        for (int i = 0; i < dim; ++i) overlap += std::conj(u[i]) * v[i];
        for (int i = 0; i < dim; ++i) v[i] -= overlap * u[i];
      }
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      if (norm < 1e-12) continue;
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
    double value = 0.0;
    for (const auto& v : basis) {
      double outcome_best = 0.0;
      for (size_t x = 0; x < ms.size(); ++x) {
        double u = 0.0;
        for (int i = 0; i < dim; ++i) {
          Complex row = 0.0;
          for (int j = 0; j < dim; ++j) row += ms[x](i, j) * v[j];
          u += (std::conj(v[i]) * row).real();
        }
        if (x == 0 || u > outcome_best) outcome_best = u;
      }
      value += outcome_best;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

QceReport verify_canonical_qce(const QceInstance& inst, double eps,
                               const std::map<int, ComplexMatrix>* certificates,
                               std::uint64_t seed) {
  inst.validate();
  if (!inst.is_canonical()) {
    throw InputError("verify_canonical_qce expects a canonical instance; run canonicalize first");
  }

  QceReport report;
  report.eps = eps;
  report.outcome = simulate_normal_qce(inst);

  std::vector<double> on_path(inst.game.players, 0.0);
  for (const auto& [profile, p] : report.outcome.entries) {
    for (int i = 0; i < inst.game.players; ++i) on_path[i] += p * inst.game.payoff(profile, i);
  }

  bool any_violation = false;
  bool any_undetermined = false;
  for (int i = 0; i < inst.game.players; ++i) {
    ConditionalStateFamily family = conditional_states(inst, i);
    const int dim = 1 << inst.state.register_of(i).size();

    PlayerAnalysis a;
    if (dim == 1) {
      a = classical_best_response(inst, i, family, on_path[i]);
    } else if (inst.game.action_count(i) == 2) {
      std::vector<std::array<double, 2>> payoffs;
      for (const ConditionalEntry& e : family.entries) {
        std::array<double, 2> u{};
        for (int x = 0; x < 2; ++x) {
          std::vector<int> profile;
          size_t k = 0;
          for (int p = 0; p < inst.game.players; ++p) {
            profile.push_back(p == i ? x : e.advice_actions[k++]);
          }
          u[x] = inst.game.payoff(profile, i);
        }
        payoffs.push_back(u);
      }
      BinaryDeviationResult dev = optimal_deviation_binary(family, payoffs);
      a.player = i;
      a.method = PlayerAnalysis::Method::exact_binary;
      a.on_path = on_path[i];
      a.deviation_value = dev.value;
      a.gain = dev.value - on_path[i];
      a.measurement = dev.measurement;
    } else {
      std::vector<ComplexMatrix> ms = payoff_operators(inst, i, family);
      const ComplexMatrix* cert = nullptr;
      if (certificates) {
        auto it = certificates->find(i);
        if (it != certificates->end()) cert = &it->second;
      }
      a.player = i;
      a.on_path = on_path[i];
      if (cert && dual_certificate_check(ms, *cert, on_path[i], eps)) {
        a.method = PlayerAnalysis::Method::certified;
        a.deviation_value = cert->trace().real();
        a.gain = a.deviation_value - on_path[i];
      } else {
        a.method = PlayerAnalysis::Method::sampled;
        a.deviation_value = sampled_deviation_value(ms, seed + 0x9e3779b97f4a7c15ULL * (i + 1), 200);
        a.gain = a.deviation_value - on_path[i];
        if (a.gain <= eps) any_undetermined = true;
      }
    }
    if (a.gain > eps) any_violation = true;
    report.players.push_back(std::move(a));
  }

  report.verdict = any_violation ? QceReport::Verdict::not_equilibrium
                   : any_undetermined ? QceReport::Verdict::undetermined
                                      : QceReport::Verdict::equilibrium;
  return report;
}

DeviationCriterion deviation_criterion(const ConditionalStateFamily& family, double eps) {
  if (family.entries.size() != 2) {
    throw InputError("deviation_criterion: the family must hold exactly two conditional states");
  }
  const ConditionalEntry* rho = nullptr;
  const ConditionalEntry* sigma = nullptr;
  for (const ConditionalEntry& e : family.entries) {
    if (std::abs(e.probability - 1.0 / 3.0) <= 1e-6) rho = &e;
    if (std::abs(e.probability - 2.0 / 3.0) <= 1e-6) sigma = &e;
  }
  if (!rho || !sigma) {
    throw InputError("deviation_criterion: advice probabilities must be 1/3 and 2/3");
  }
  DeviationCriterion out;
  ComplexMatrix m = rho->state * Complex(1.0 / 3.0, 0.0) - sigma->state * Complex(2.0 / 3.0, 0.0);
  out.trace_value = linalg::trace_norm(m);
  out.has_incentive = out.trace_value > 1.0 / 3.0 + eps;
  return out;
}

}  // namespace corrq::quantum
