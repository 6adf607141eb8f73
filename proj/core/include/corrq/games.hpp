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

#ifndef CORRQ_GAMES_HPP_
#define CORRQ_GAMES_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corrq/error.hpp"

namespace corrq::games {

// Exponential-blowup guard for n(G) conversion.
inline constexpr int kDefaultStrategyCap = 4096;

// Complete-information game in strategic form. Payoff cells are stored in
// row-major order of the action indices: the cell for profile
// (a_0, ..., a_{n-1}) sits at index sum_i a_i * prod_{j>i} |A_j|.
struct NormalFormGame {
  int players = 0;
  std::vector<std::string> player_names;              // optional, display only
  std::vector<std::vector<std::string>> actions;      // per-player labels
  std::vector<std::vector<double>> payoffs;           // one vector of n payoffs per cell

  int action_count(int player) const { return static_cast<int>(actions[player].size()); }
  long long cell_count() const;
  long long cell_index(const std::vector<int>& profile) const;
  std::vector<int> profile_of_cell(long long cell) const;
  double payoff(const std::vector<int>& profile, int player) const;
  int action_index(int player, const std::string& label) const;  // InputError if unknown
  std::string player_name(int player) const;

  void validate() const;
};

struct TreeNode {
  enum class Kind { internal, leaf };
  Kind kind = Kind::leaf;
  // Internal nodes:
  int owner = -1;
  std::string infoset;
  std::vector<std::pair<std::string, int>> edges;  // action label -> child node id, ordered
  // Leaves:
  std::vector<double> payoffs;  // one per player

  bool is_leaf() const { return kind == Kind::leaf; }
};

// Rooted game tree with information sets. Node ids are indices into `nodes`.
struct ExtensiveFormGame {
  int players = 0;
  std::vector<std::string> player_names;
  int root = 0;
  std::vector<TreeNode> nodes;

  const TreeNode& node(int id) const;
  std::string player_name(int player) const;

  // Information sets of one player in deterministic order: first appearance
  // along a depth-first walk from the root following edge order.
  std::vector<std::string> infosets_of(int player) const;
  // All information sets in DFS-first-appearance order with their owners.
  std::vector<std::pair<std::string, int>> all_infosets() const;
  // Action labels of an information set (edge order of its first DFS node).
  std::vector<std::string> infoset_actions(const std::string& infoset) const;
  int infoset_owner(const std::string& infoset) const;
  std::vector<int> infoset_nodes(const std::string& infoset) const;
  std::vector<int> leaf_ids() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks tree shape, information-set consistency (single owner, identical
// action-label sets) and perfect recall. Violations are report content;
// nothing throws.
ValidationReport validate_extensive(const ExtensiveFormGame& g);

// One action per information set of the owner.
struct PureStrategy {
  int owner = -1;
  std::map<std::string, std::string> choices;  // infoset -> action label

  const std::string& choice(const std::string& infoset) const;
  // Action labels joined with '.', in the given information-set order.
  std::string label(const std::vector<std::string>& infoset_order) const;
};

// All pure strategies of `player`, enumerated lexicographically over the
// player's information sets in DFS order. Throws InputError past `cap`.
std::vector<PureStrategy> enumerate_strategies(const ExtensiveFormGame& g, int player,
                                               int cap = kDefaultStrategyCap);

// Walks the tree under a full strategy profile (one strategy per player,
// indexed by owner). Returns the leaf id reached.
int play_profile(const ExtensiveFormGame& g, const std::vector<PureStrategy>& profile);

// Distribution over outcomes. Normal-form keys are action-index profiles;
// extensive-form keys are single-element {leaf_id} vectors.
struct OutcomeDistribution {
  enum class Kind { action_profile, leaf };
  Kind kind = Kind::action_profile;
  std::vector<std::pair<std::vector<int>, double>> entries;

  void validate(double tol = 1e-9) const;
  double probability(const std::vector<int>& key) const;
  void sort_keys();
};

struct NormalFormConversion {
  NormalFormGame game;
  // strategies[i][k] is the pure strategy behind action k of player i in n(G).
  std::vector<std::vector<PureStrategy>> strategies;
};

// Normal-form equivalent n(G): one action per pure strategy, payoffs by
// joint execution. Requires a valid game (InputError listing the violations
// otherwise) and per-player strategy counts within `cap`.
NormalFormConversion to_normal_form(const ExtensiveFormGame& g,
                                    int cap = kDefaultStrategyCap);

// True iff for every leaf x of g, the probability of x under d_ext equals
// the total probability of all n(G) profiles whose joint execution reaches
// x, within tol.
bool corresponds(const ExtensiveFormGame& g, const OutcomeDistribution& d_ext,
                 const NormalFormConversion& nf, const OutcomeDistribution& d_nf,
                 double tol = 1e-9);

}  // namespace corrq::games

#endif  // CORRQ_GAMES_HPP_
