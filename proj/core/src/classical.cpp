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

#include "corrq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "simplex.hpp"

namespace corrq::classical {

namespace {

std::string profile_label(const games::NormalFormGame& g, const std::vector<int>& profile) {
  std::string out = "(";
  for (int i = 0; i < g.players; ++i) {
    if (i) out += ",";
    out += g.actions[i][profile[i]];
  }
  return out + ")";
}

}  // namespace

void CorrelatingDevice::validate(const games::NormalFormGame& g, double tol) const {
  double total = 0.0;
  for (const auto& e : entries) {
    if (static_cast<int>(e.profile.size()) != g.players) {
      throw InputError("device profile length does not match player count");
    }
    for (int i = 0; i < g.players; ++i) {
      if (e.profile[i] < 0 || e.profile[i] >= g.action_count(i)) {
        throw InputError("device profile indexes an unknown action");
      }
    }
    if (!(e.probability >= -1e-12) || !std::isfinite(e.probability)) {
      throw InputError("device probabilities must be nonnegative");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os << "device probabilities sum to " << total << ", not 1";
    throw InputError(os.str());
  }
}

games::OutcomeDistribution CorrelatingDevice::outcome_distribution() const {
  games::OutcomeDistribution d;
  d.kind = games::OutcomeDistribution::Kind::action_profile;
  std::map<std::vector<int>, double> acc;
  for (const auto& e : entries) acc[e.profile] += e.probability;
  for (const auto& [k, p] : acc) d.entries.emplace_back(k, p);
  return d;
}

void ExtensiveDevice::validate(const games::ExtensiveFormGame& g, double tol) const {
  double total = 0.0;
  for (const auto& e : entries) {
    if (static_cast<int>(e.profile.size()) != g.players) {
      throw InputError("device strategy profile length does not match player count");
    }
    for (int i = 0; i < g.players; ++i) {
      const games::PureStrategy& s = e.profile[i];
      for (const std::string& infoset : g.infosets_of(i)) {
        const std::string& action = s.choice(infoset);  // throws if missing
        auto labels = g.infoset_actions(infoset);
        if (std::find(labels.begin(), labels.end(), action) == labels.end()) {
          throw InputError("strategy picks unavailable action '" + action +
                           "' at information set '" + infoset + "'");
        }
      }
    }
    if (!(e.probability >= -1e-12) || !std::isfinite(e.probability)) {
      throw InputError("device probabilities must be nonnegative");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os << "device probabilities sum to " << total << ", not 1";
    throw InputError(os.str());
  }
}

games::OutcomeDistribution ExtensiveDevice::outcome_distribution(
    const games::ExtensiveFormGame& g) const {
  games::OutcomeDistribution d;
  d.kind = games::OutcomeDistribution::Kind::leaf;
  std::map<int, double> acc;
  for (const auto& e : entries) acc[games::play_profile(g, e.profile)] += e.probability;
  for (const auto& [leaf, p] : acc) d.entries.emplace_back(std::vector<int>{leaf}, p);
  return d;
}

double EquilibriumReport::max_gain() const {
  double m = 0.0;
  for (double v : gains) m = std::max(m, v);
  return m;
}

int EquilibriumReport::worst_player() const {
  int worst = 0;
  for (size_t i = 1; i < gains.size(); ++i) {
    if (gains[i] > gains[worst]) worst = static_cast<int>(i);
  }
  return worst;
}

EquilibriumReport verify_ce(const games::NormalFormGame& g, const CorrelatingDevice& mu,
                            double eps) {
  g.validate();
  mu.validate(g);

  EquilibriumReport report;
  report.eps = eps;
  report.on_path.assign(g.players, 0.0);
  report.gains.assign(g.players, 0.0);

  for (const auto& e : mu.entries) {
    for (int i = 0; i < g.players; ++i) report.on_path[i] += e.probability * g.payoff(e.profile, i);
  }

  for (int i = 0; i < g.players; ++i) {
    const int ai_count = g.action_count(i);
    // utility_sum[a][x]: unnormalized expected utility of answering advice a
    // with action x, weighted by the advice probability.
    std::vector<std::vector<double>> utility_sum(ai_count, std::vector<double>(ai_count, 0.0));
    std::vector<double> marginal(ai_count, 0.0);
    for (const auto& e : mu.entries) {
      int advice = e.profile[i];
      marginal[advice] += e.probability;
      std::vector<int> profile = e.profile;
      for (int x = 0; x < ai_count; ++x) {
        profile[i] = x;
        utility_sum[advice][x] += e.probability * g.payoff(profile, i);
      }
    }

    DeviationWitness w;
    w.player = i;
    double gain = 0.0;
    for (int a = 0; a < ai_count; ++a) {
      if (marginal[a] <= 0.0) continue;
      int best = 0;
      for (int x = 1; x < ai_count; ++x) {
        if (utility_sum[a][x] > utility_sum[a][best]) best = x;
      }
      gain += utility_sum[a][best] - utility_sum[a][a];
      std::ostringstream os;
      os << "advice " << g.actions[i][a] << " (p=" << marginal[a] << "): play "
         << g.actions[i][best] << ", conditional utility "
         << utility_sum[a][best] / marginal[a] << " vs " << utility_sum[a][a] / marginal[a]
         << " for following";
      w.plan.push_back(os.str());
    }
    report.gains[i] = gain;
    w.follow_utility = report.on_path[i];
    w.achieved_utility = report.on_path[i] + gain;
    report.witnesses.push_back(std::move(w));
  }

  report.equilibrium = report.max_gain() <= eps;
  return report;
}

CellObjective social_welfare_objective(const games::NormalFormGame& g) {
  CellObjective obj;
  obj.weights.resize(static_cast<size_t>(g.cell_count()), 0.0);
  for (long long cell = 0; cell < g.cell_count(); ++cell) {
    for (int i = 0; i < g.players; ++i) obj.weights[static_cast<size_t>(cell)] += g.payoffs[static_cast<size_t>(cell)][i];
  }
  return obj;
}

CellObjective player_utility_objective(const games::NormalFormGame& g, int player) {
  if (player < 0 || player >= g.players) throw InputError("objective player out of range");
  CellObjective obj;
  obj.weights.resize(static_cast<size_t>(g.cell_count()), 0.0);
  for (long long cell = 0; cell < g.cell_count(); ++cell) {
    obj.weights[static_cast<size_t>(cell)] = g.payoffs[static_cast<size_t>(cell)][player];
  }
  return obj;
}

CorrelatingDevice find_ce(const games::NormalFormGame& g,
                          const std::optional<CellObjective>& objective, long long cell_cap) {
  g.validate();
  const long long cells = g.cell_count();
  if (cells > cell_cap) {
    throw InputError("game has " + std::to_string(cells) + " cells, above the cap of " +
                     std::to_string(cell_cap));
  }

  lp::Problem problem;
  problem.variables = static_cast<int>(cells);
  problem.objective.assign(problem.variables, 0.0);
  if (objective) {
    if (static_cast<long long>(objective->weights.size()) != cells) {
      throw InputError("objective weight count does not match cell count");
    }
    problem.objective = objective->weights;
  }
  problem.a_eq.push_back(std::vector<double>(problem.variables, 1.0));
  problem.b_eq.push_back(1.0);

  // Incentive rows: following advice a must weakly beat switching to x.
  for (int i = 0; i < g.players; ++i) {
    for (int a = 0; a < g.action_count(i); ++a) {
      for (int x = 0; x < g.action_count(i); ++x) {
        if (x == a) continue;
        std::vector<double> row(problem.variables, 0.0);
        for (long long cell = 0; cell < cells; ++cell) {
          std::vector<int> profile = g.profile_of_cell(cell);
          if (profile[i] != a) continue;
          double follow = g.payoffs[static_cast<size_t>(cell)][i];
          profile[i] = x;
          row[static_cast<size_t>(cell)] = g.payoff(profile, i) - follow;
        }
        problem.a_ub.push_back(std::move(row));
        problem.b_ub.push_back(0.0);
      }
    }
  }

  lp::Solution sol = lp::solve(problem);
  if (!sol.feasible) {
    throw NumericError("find_ce: the LP solver reported infeasibility; this should be impossible");
  }
  if (!sol.bounded) {
    throw NumericError("find_ce: the LP solver reported an unbounded program");
  }

  // Certify the raw solution before cleaning it up.
  double residual = 0.0;
  double total = 0.0;
  for (int j = 0; j < problem.variables; ++j) {
    residual = std::max(residual, -sol.x[j]);
    total += sol.x[j];
  }
  residual = std::max(residual, std::abs(total - 1.0));
  for (size_t r = 0; r < problem.a_ub.size(); ++r) {
    double lhs = 0.0;
    for (int j = 0; j < problem.variables; ++j) lhs += problem.a_ub[r][j] * sol.x[j];
    residual = std::max(residual, lhs);
  }
  if (residual > 1e-8) {
    std::ostringstream os;
    os << "find_ce: solution violates the constraints by " << residual;
    throw NumericError(os.str());
  }

  CorrelatingDevice device;
  for (long long cell = 0; cell < cells; ++cell) {
    double p = std::max(sol.x[static_cast<size_t>(cell)], 0.0);
    if (p > 1e-12) device.entries.push_back({g.profile_of_cell(cell), p / total});
  }
  EquilibriumReport check = verify_ce(g, device, 1e-6);
  if (!check.equilibrium) {
    std::ostringstream os;
    os << "find_ce: certification failed, residual gain " << check.max_gain();
    throw NumericError(os.str());
  }
  return device;
}

namespace {

// One branch of the deviation walk: a device entry still consistent with the
// deviating player's observations, the node play has reached, and its weight.
struct Branch {
  int entry = 0;
  int node = 0;
  double weight = 0.0;
};

struct DeviationContext {
  const games::ExtensiveFormGame* game = nullptr;
  const ExtensiveDevice* device = nullptr;
  int player = -1;
  long long states_visited = 0;
  long long state_cap = kDefaultPlanStateCap;
};

int follow_edge(const games::TreeNode& node, const std::string& action) {
  for (const auto& [label, child] : node.edges) {
    if (label == action) return child;
  }
  throw InputError("action '" + action + "' not available at information set '" + node.infoset +
                   "'");
}

// Best achievable expected utility over all deterministic deviation plans,
// computed by recursion over the deviating player's knowledge states.
// `history` is carried only to describe the winning plan.
double best_deviation_walk(DeviationContext& ctx, std::vector<Branch> branches,
                           const std::string& history, std::vector<std::string>* plan) {
  const games::ExtensiveFormGame& g = *ctx.game;
  const ExtensiveDevice& mu = *ctx.device;

  // Advance every branch to the deviator's next decision point or a leaf.
  double value = 0.0;
  // Key: (infoset, recommended action) revealed on arrival.
  std::map<std::pair<std::string, std::string>, std::vector<Branch>> groups;
  for (Branch b : branches) {
    while (true) {
      const games::TreeNode& n = g.node(b.node);
      if (n.is_leaf()) {
        value += b.weight * n.payoffs[ctx.player];
        break;
      }
      if (n.owner == ctx.player) {
        const std::string& rec = mu.entries[b.entry].profile[ctx.player].choice(n.infoset);
        groups[{n.infoset, rec}].push_back(b);
        break;
      }
      const std::string& action = mu.entries[b.entry].profile[n.owner].choice(n.infoset);
      b.node = follow_edge(n, action);
    }
  }

  for (auto& [key, group] : groups) {
    const auto& [infoset, rec] = key;
    if (++ctx.states_visited > ctx.state_cap) {
      throw InputError("deviation-plan enumeration exceeded the configured cap of " +
                       std::to_string(ctx.state_cap) + " recommendation histories");
    }
    std::string here = history.empty() ? infoset + ":" + rec : history + ", " + infoset + ":" + rec;
    double best = 0.0;
    std::string best_action;
    std::vector<std::string> best_sub;
    bool first = true;
    for (const std::string& action : g.infoset_actions(infoset)) {
      std::vector<Branch> advanced = group;
      for (Branch& b : advanced) b.node = follow_edge(g.node(b.node), action);
      std::vector<std::string> sub;
      double v = best_deviation_walk(ctx, std::move(advanced), here, &sub);
      if (first || v > best) {
        best = v;
        best_action = action;
        best_sub = std::move(sub);
        first = false;
      }
    }
    if (plan) {
      std::ostringstream os;
      os << "after advice [" << here << "] play " << best_action;
      if (best_action != rec) os << " (deviates)";
      plan->push_back(os.str());
      plan->insert(plan->end(), best_sub.begin(), best_sub.end());
    }
    value += best;
  }
  return value;
}

}  // namespace

EquilibriumReport verify_efce(const games::ExtensiveFormGame& g, const ExtensiveDevice& mu,
                              double eps, long long plan_state_cap) {
  games::ValidationReport vr = validate_extensive(g);
  if (!vr.ok()) throw InputError("verify_efce requires a valid game: " + vr.violations.front());
  mu.validate(g);

  EquilibriumReport report;
  report.eps = eps;
  report.on_path.assign(g.players, 0.0);
  report.gains.assign(g.players, 0.0);

  for (const auto& e : mu.entries) {
    const games::TreeNode& leaf = g.node(games::play_profile(g, e.profile));
    for (int i = 0; i < g.players; ++i) report.on_path[i] += e.probability * leaf.payoffs[i];
  }

  for (int i = 0; i < g.players; ++i) {
    DeviationContext ctx;
    ctx.game = &g;
    ctx.device = &mu;
    ctx.player = i;
    ctx.state_cap = plan_state_cap;
    std::vector<Branch> start;
    for (size_t e = 0; e < mu.entries.size(); ++e) {
      if (mu.entries[e].probability > 0.0) {
        start.push_back({static_cast<int>(e), g.root, mu.entries[e].probability});
      }
    }
    DeviationWitness w;
    w.player = i;
    double best = best_deviation_walk(ctx, std::move(start), "", &w.plan);
    report.gains[i] = best - report.on_path[i];
    w.follow_utility = report.on_path[i];
    w.achieved_utility = best;
    report.witnesses.push_back(std::move(w));
  }

  report.equilibrium = report.max_gain() <= eps;
  return report;
}

CorrelatingDevice push_to_normal_form(const games::NormalFormConversion& nf,
                                      const ExtensiveDevice& mu) {
  const int players = nf.game.players;
  // Index strategies by their choice maps for the lookup.
  std::vector<std::map<std::map<std::string, std::string>, int>> index(players);
  for (int i = 0; i < players; ++i) {
    for (size_t k = 0; k < nf.strategies[i].size(); ++k) {
      index[i][nf.strategies[i][k].choices] = static_cast<int>(k);
    }
  }

  std::map<std::vector<int>, double> acc;
  for (const auto& e : mu.entries) {
    std::vector<int> profile(players);
    for (int i = 0; i < players; ++i) {
      auto it = index[i].find(e.profile[i].choices);
      if (it == index[i].end()) {
        throw InputError("device strategy for player " + std::to_string(i) +
                         " does not match any enumerated pure strategy");
      }
      profile[i] = it->second;
    }
    acc[profile] += e.probability;
  }

  CorrelatingDevice device;
  for (const auto& [profile, p] : acc) device.entries.push_back({profile, p});
  return device;
}

EquilibriumReport verify_ir_efce(const games::ExtensiveFormGame& g, const ExtensiveDevice& mu,
                                 double eps, int strategy_cap) {
  games::ValidationReport vr = validate_extensive(g);
  if (!vr.ok()) throw InputError("verify_ir_efce requires a valid game: " + vr.violations.front());
  mu.validate(g);

  games::NormalFormConversion nf = games::to_normal_form(g, strategy_cap);
  CorrelatingDevice device = push_to_normal_form(nf, mu);
  EquilibriumReport report = verify_ce(nf.game, device, eps);

  // Rephrase witnesses in terms of full strategy recommendations.
  for (auto& w : report.witnesses) {
    for (auto& line : w.plan) line = "strategy " + line;
  }
  return report;
}

}  // namespace corrq::classical
