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

#ifndef CORRQ_CLASSICAL_HPP_
#define CORRQ_CLASSICAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "corrq/games.hpp"

namespace corrq::classical {

inline constexpr double kDefaultEps = 1e-9;
inline constexpr long long kDefaultCellCap = 4096;
// Guard on the number of distinct recommendation histories explored while
// enumerating deviation plans.
inline constexpr long long kDefaultPlanStateCap = 1 << 20;

// Distribution over action profiles (normal form). Profiles hold one action
// index per player.
struct DeviceEntry {
  std::vector<int> profile;
  double probability = 0.0;
};

struct CorrelatingDevice {
  std::vector<DeviceEntry> entries;

  void validate(const games::NormalFormGame& g, double tol = 1e-9) const;
  games::OutcomeDistribution outcome_distribution() const;
};

// Distribution over pure strategy profiles (extensive form).
struct ExtensiveDeviceEntry {
  std::vector<games::PureStrategy> profile;  // one strategy per player
  double probability = 0.0;
};

struct ExtensiveDevice {
  std::vector<ExtensiveDeviceEntry> entries;

  void validate(const games::ExtensiveFormGame& g, double tol = 1e-9) const;
  // Leaf distribution when everyone follows.
  games::OutcomeDistribution outcome_distribution(const games::ExtensiveFormGame& g) const;
};

struct DeviationWitness {
  int player = -1;
  double follow_utility = 0.0;    // expected utility of always following
  double achieved_utility = 0.0;  // expected utility of the best deviation
  // One line per decision of the best deviation plan.
  std::vector<std::string> plan;
};

struct EquilibriumReport {
  bool equilibrium = false;
  double eps = kDefaultEps;
  std::vector<double> on_path;  // per player
  std::vector<double> gains;    // per player: best deviation value - on_path
  std::vector<DeviationWitness> witnesses;

  double max_gain() const;
  int worst_player() const;
};

// Aumann correlated equilibrium check. For every player and every
// recommended action with positive marginal, compares the follow utility
// against the best response to the posterior over opponents' actions.
EquilibriumReport verify_ce(const games::NormalFormGame& g, const CorrelatingDevice& mu,
                            double eps = kDefaultEps);

// Linear objective over outcome probabilities, one weight per payoff cell.
struct CellObjective {
  std::vector<double> weights;
};
CellObjective social_welfare_objective(const games::NormalFormGame& g);
CellObjective player_utility_objective(const games::NormalFormGame& g, int player);

// Solves the correlated-equilibrium linear program: incentive constraints
// plus normalization, maximizing `objective` when given. The returned device
// is certified: constraint residuals at most 1e-8 and verify_ce passes at
// eps 1e-6 (NumericError otherwise).
CorrelatingDevice find_ce(const games::NormalFormGame& g,
                          const std::optional<CellObjective>& objective = std::nullopt,
                          long long cell_cap = kDefaultCellCap);

// Extensive-form correlated equilibrium check. Recommendations are revealed
// move by move as information sets are reached; a player who deviates keeps
// receiving recommendations at his own later information sets. Deviations
// range over all deterministic plans mapping (current information set,
// recommendations received so far) to an action; the optimum is computed
// exactly by dynamic programming over those histories, with ties broken
// toward the lexicographically first plan.
EquilibriumReport verify_efce(const games::ExtensiveFormGame& g, const ExtensiveDevice& mu,
                              double eps = kDefaultEps,
                              long long plan_state_cap = kDefaultPlanStateCap);

// Immediate-revelation variant: each player learns his entire recommended
// strategy up front. Implemented by pushing the device through the
// normal-form equivalent n(G) and running verify_ce there.
EquilibriumReport verify_ir_efce(const games::ExtensiveFormGame& g, const ExtensiveDevice& mu,
                                 double eps = kDefaultEps,
                                 int strategy_cap = games::kDefaultStrategyCap);

// The n(G) device used by verify_ir_efce, exposed for reuse and testing.
CorrelatingDevice push_to_normal_form(const games::NormalFormConversion& nf,
                                      const ExtensiveDevice& mu);

}  // namespace corrq::classical

#endif  // CORRQ_CLASSICAL_HPP_
