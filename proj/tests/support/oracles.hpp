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
//
// Test-only oracles and generators. Everything here is deliberately written
// along different code paths than the library it checks.

#ifndef CORRQ_TESTS_SUPPORT_ORACLES_HPP_
#define CORRQ_TESTS_SUPPORT_ORACLES_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "corrq/classical.hpp"
#include "corrq/games.hpp"
#include "corrq/linalg.hpp"
#include "corrq/quantum.hpp"

namespace corrq::testing {

using linalg::Complex;
using linalg::ComplexMatrix;

// Roots of the characteristic polynomial of a 2x2 Hermitian matrix,
// descending.
inline std::pair<double, double> char_poly_eigenvalues(const ComplexMatrix& m) {
  double tr = m.trace().real();
  double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Partial trace by naive index arithmetic (division and modulus, no masks).
inline ComplexMatrix direct_partial_trace(const ComplexMatrix& rho, int qubits,
                                          const std::vector<int>& keep) {
  auto bit = [&](long long index, int q) {
    long long below = qubits - 1 - q;
    return static_cast<int>((index / (1LL << below)) % 2);
  };
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  const long long dim = 1LL << qubits;
  const long long kd = 1LL << kept.size();
  ComplexMatrix out(static_cast<int>(kd), static_cast<int>(kd));
  for (long long i = 0; i < dim; ++i) {
    for (long long j = 0; j < dim; ++j) {
      bool same_env = true;
      for (int q = 0; q < qubits; ++q) {
        if (std::find(kept.begin(), kept.end(), q) != kept.end()) continue;
        if (bit(i, q) != bit(j, q)) {
          same_env = false;
          break;
        }
      }
      if (!same_env) continue;
      long long r = 0, c = 0;
      for (int k = 0; k < static_cast<int>(kept.size()); ++k) {
        r = r * 2 + bit(i, kept[k]);
        c = c * 2 + bit(j, kept[k]);
      }
      out(static_cast<int>(r), static_cast<int>(c)) += rho(static_cast<int>(i),
                                                           static_cast<int>(j));
    }
  }
  return out;
}

// Best utility over real-angle projective measurements: play action 0 on the
// |v(theta)> outcome, action 1 otherwise. Adequate for families with real
// conditional states (the sweep covers every real one-qubit projector).
inline double angle_sweep_value(const quantum::ConditionalStateFamily& family,
                                const std::vector<std::array<double, 2>>& payoffs,
                                double step = 1e-5) {
  double best = -1e300;
  for (double theta = 0.0; theta < M_PI; theta += step) {
    double c = std::cos(theta), s = std::sin(theta);
    double value = 0.0;
    for (size_t e = 0; e < family.entries.size(); ++e) {
      const auto& rho = family.entries[e].state;
      double hit = (rho(0, 0) * c * c + rho(1, 1) * s * s + 2.0 * (rho(0, 1) * c * s).real())
                       .real();
      value += family.entries[e].probability *
               (payoffs[e][0] * hit + payoffs[e][1] * (1.0 - hit));
    }
    best = std::max(best, value);
  }
  return best;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = u(rng);
    for (int j = i + 1; j < dim; ++j) {
      Complex v(u(rng), u(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

inline ComplexMatrix random_complex_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline std::vector<Complex> random_unit_amplitudes(std::mt19937_64& rng, int qubits) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> amps(1ULL << qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(g(rng), g(rng));
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  return amps;
}

// Mixture of a few random pure states: a generic density matrix.
inline ComplexMatrix random_density_matrix(std::mt19937_64& rng, int qubits, int mixture = 3) {
  const int dim = 1 << qubits;
  ComplexMatrix rho(dim, dim);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  std::vector<double> weights(mixture);
  for (auto& w : weights) {
    w = u(rng);
    total += w;
  }
  for (int k = 0; k < mixture; ++k) {
    auto amps = random_unit_amplitudes(rng, qubits);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        rho(i, j) += amps[i] * std::conj(amps[j]) * (weights[k] / total);
      }
    }
  }
  return rho;
}

inline games::NormalFormGame random_normal_game(std::mt19937_64& rng, int players,
                                                int max_actions = 3) {
  std::uniform_int_distribution<int> na(2, max_actions);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  games::NormalFormGame g;
  g.players = players;
  for (int i = 0; i < players; ++i) {
    int count = na(rng);
    std::vector<std::string> labels;
    for (int a = 0; a < count; ++a) labels.push_back("a" + std::to_string(a));
    g.actions.push_back(std::move(labels));
  }
  for (long long cell = 0; cell < g.cell_count(); ++cell) {
    std::vector<double> payoffs(players);
    for (auto& p : payoffs) p = u(rng);
    g.payoffs.push_back(std::move(payoffs));
  }
  return g;
}

// Random perfect-information tree: every internal node is its own
// information set, so perfect recall holds by construction.
inline games::ExtensiveFormGame random_tree(std::mt19937_64& rng, int players, int max_nodes) {
  games::ExtensiveFormGame g;
  g.players = players;
  std::uniform_int_distribution<int> owner(0, players - 1);
  std::uniform_int_distribution<int> width(2, 3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> coin(0, 99);

  // Frontier expansion until the budget runs out, then leaves everywhere.
  g.nodes.emplace_back();
  std::vector<int> frontier = {0};
  int internal_budget = max_nodes;
  while (!frontier.empty()) {
    int id = frontier.back();
    frontier.pop_back();
    bool make_leaf = internal_budget <= 0 || (id != 0 && coin(rng) < 40);
    if (make_leaf) {
      g.nodes[id].kind = games::TreeNode::Kind::leaf;
      g.nodes[id].payoffs.resize(players);
      for (auto& p : g.nodes[id].payoffs) p = u(rng);
      continue;
    }
    --internal_budget;
    g.nodes[id].kind = games::TreeNode::Kind::internal;
    g.nodes[id].owner = owner(rng);
    g.nodes[id].infoset = "n" + std::to_string(id);
    int k = width(rng);
    for (int e = 0; e < k; ++e) {
      int child = static_cast<int>(g.nodes.size());
      g.nodes.emplace_back();
      g.nodes[id].edges.emplace_back("m" + std::to_string(e), child);
      frontier.push_back(child);
    }
  }
  return g;
}

// Walks the tree for one strategy profile without touching the library's
// play_profile; used to cross-check the normal-form conversion.
inline std::vector<double> oracle_play(const games::ExtensiveFormGame& g,
                                       const std::vector<games::PureStrategy>& profile) {
  int cur = g.root;
  while (!g.nodes[cur].is_leaf()) {
    const games::TreeNode& n = g.nodes[cur];
    const std::string& action = profile[n.owner].choices.at(n.infoset);
    int next = -1;
    for (const auto& [label, child] : n.edges) {
      if (label == action) next = child;
    }
    cur = next;
  }
  return g.nodes[cur].payoffs;
}

}  // namespace corrq::testing

#endif  // CORRQ_TESTS_SUPPORT_ORACLES_HPP_
