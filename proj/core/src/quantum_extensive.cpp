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
#include <map>
#include <set>
#include <sstream>

#include "corrq/quantum.hpp"
#include "sim.hpp"

namespace corrq::quantum {

using detail::Amps;
using linalg::Complex;

namespace {

constexpr double kBranchFloor = 1e-12;

int follow_edge(const games::TreeNode& node, const std::string& action) {
  for (const auto& [label, child] : node.edges) {
    if (label == action) return child;
  }
  throw InputError("action '" + action + "' not available at information set '" + node.infoset +
                   "'");
}

// Joint state of one play branch. Ancillas appended per circuit application
// grow the register just for this branch.
struct BranchState {
  Amps amps;
  int n = 0;
  std::set<int> measured;
};

// Applies the unitaries of a circuit to the branch; returns the resolved
// output qubits. `base_n` is the original shared state's qubit count, the
// reference point for ancilla slots in circuit files.
std::vector<int> apply_circuit(BranchState& b, const PlayerCircuit& c, int base_n, int max_qubits,
                               std::vector<std::string>* warnings, const std::string& infoset,
                               std::set<std::string>* warned) {
  int ancilla_base = b.n;
  if (b.n + c.ancilla_count > max_qubits) {
    throw InputError("ancilla extension exceeds the qubit cap of " + std::to_string(max_qubits));
  }
  detail::append_ancillas(b.amps, b.n, c.ancilla_count);

  auto check_reuse = [&](int resolved) {
    if (warnings && b.measured.count(resolved) && !warned->count(infoset)) {
      warned->insert(infoset);
      warnings->push_back("information set '" + infoset +
                          "' touches qubit " + std::to_string(resolved) +
                          " that was already measured; legal but usually a modeling bug");
    }
  };

  for (const Gate& g : c.gates) {
    std::vector<int> targets;
    for (int t : g.targets) {
      int resolved = detail::resolve_target(t, base_n, ancilla_base, c.ancilla_count);
      check_reuse(resolved);
      targets.push_back(resolved);
    }
    detail::apply_gate(b.amps, b.n, g, targets);
  }
  std::vector<int> outputs;
  for (int t : c.output_qubits) {
    int resolved = detail::resolve_target(t, base_n, ancilla_base, c.ancilla_count);
    check_reuse(resolved);
    outputs.push_back(resolved);
  }
  return outputs;
}

}  // namespace

void ExtensiveQceInstance::validate(int max_qubits) const {
  games::ValidationReport vr = games::validate_extensive(game);
  if (!vr.ok()) throw InputError("invalid game: " + vr.violations.front());
  state.validate(game.players);
  if (state.qubit_count > max_qubits) throw InputError("state exceeds the qubit cap");

  std::set<std::string> seen;
  for (const InfosetProgram& prog : programs) {
    if (!seen.insert(prog.infoset).second) {
      throw InputError("duplicate program for information set '" + prog.infoset + "'");
    }
    int owner = game.infoset_owner(prog.infoset);  // throws on unknown set
    if (prog.circuit.has_value() == prog.mix.has_value()) {
      throw InputError("information set '" + prog.infoset +
                       "' needs exactly one of a circuit or a mix");
    }
    auto labels = game.infoset_actions(prog.infoset);
    if (prog.circuit) {
      const PlayerCircuit& c = *prog.circuit;
      if (c.owner != owner) {
        throw InputError("circuit at information set '" + prog.infoset +
                         "' is not owned by the set's owner");
      }
      auto reg = state.register_of(owner);
      for (const Gate& g : c.gates) {
        gate_matrix(g);
        for (int t : g.targets) {
          if (t < state.qubit_count &&
              std::find(reg.begin(), reg.end(), t) == reg.end()) {
            throw InputError("circuit at '" + prog.infoset + "' touches qubit " +
                             std::to_string(t) + " outside the owner's register");
          }
          if (t >= state.qubit_count && t - state.qubit_count >= c.ancilla_count) {
            throw InputError("circuit at '" + prog.infoset + "' uses an undeclared ancilla slot");
          }
        }
      }
      size_t k = c.output_qubits.size();
      for (int t : c.output_qubits) {
        if (t < state.qubit_count && std::find(reg.begin(), reg.end(), t) == reg.end()) {
          throw InputError("output qubit outside the owner's register at '" + prog.infoset + "'");
        }
      }
      if (c.action_map.size() != (1ULL << k)) {
        throw InputError("action map at '" + prog.infoset + "' must cover every outcome");
      }
      for (const auto& [bits, action] : c.action_map) {
        if (bits.size() != k || bits.find_first_not_of("01") != std::string::npos) {
          throw InputError("bad action map key '" + bits + "' at '" + prog.infoset + "'");
        }
        if (std::find(labels.begin(), labels.end(), action) == labels.end()) {
          throw InputError("action map at '" + prog.infoset + "' names unavailable action '" +
                           action + "'");
        }
      }
    } else {
      double total = 0.0;
      for (const auto& [action, p] : *prog.mix) {
        if (std::find(labels.begin(), labels.end(), action) == labels.end()) {
          throw InputError("mix at '" + prog.infoset + "' names unavailable action '" + action +
                           "'");
        }
        if (!(p >= 0.0) || !std::isfinite(p)) {
          throw InputError("mix probabilities must be nonnegative at '" + prog.infoset + "'");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw InputError("mix probabilities at '" + prog.infoset + "' do not sum to 1");
      }
    }
  }
}

const InfosetProgram* ExtensiveQceInstance::find_program(const std::string& infoset) const {
  for (const InfosetProgram& prog : programs) {
    if (prog.infoset == infoset) return &prog;
  }
  return nullptr;
}

namespace {

void simulate_walk(const ExtensiveQceInstance& inst, BranchState branch, int node, double weight,
                   int max_qubits, std::map<int, double>* dist,
                   std::vector<std::string>* warnings, std::set<std::string>* warned) {
  const games::TreeNode& tn = inst.game.node(node);
  if (tn.is_leaf()) {
    (*dist)[node] += weight;
    return;
  }
  const InfosetProgram* prog = inst.find_program(tn.infoset);
  if (!prog) {
    throw InputError("reached information set '" + tn.infoset + "' has no program");
  }
  if (prog->mix) {
    for (const auto& [action, p] : *prog->mix) {
      if (p <= kBranchFloor) continue;
      simulate_walk(inst, branch, follow_edge(tn, action), weight * p, max_qubits, dist, warnings,
                    warned);
    }
    return;
  }

  std::vector<int> outputs = apply_circuit(branch, *prog->circuit, inst.state.qubit_count,
                                           max_qubits, warnings, tn.infoset, warned);
  auto outcomes = detail::measure_distribution(branch.amps, branch.n, outputs);
  for (const auto& [bits, p] : outcomes) {
    if (p <= kBranchFloor) continue;
    BranchState next = branch;
    detail::collapse(next.amps, next.n, outputs, bits);
    next.measured.insert(outputs.begin(), outputs.end());
    const std::string& action = prog->circuit->action_map.at(bits);
    simulate_walk(inst, std::move(next), follow_edge(tn, action), weight * p, max_qubits, dist,
                  warnings, warned);
  }
}

}  // namespace

ExtensiveSimResult simulate_extensive_qce(const ExtensiveQceInstance& inst, int max_qubits) {
  inst.validate(max_qubits);

  BranchState start;
  start.amps = inst.state.amplitudes;
  start.n = inst.state.qubit_count;

  std::map<int, double> dist;
  std::set<std::string> warned;
  ExtensiveSimResult result;
  simulate_walk(inst, std::move(start), inst.game.root, 1.0, max_qubits, &dist, &result.warnings,
                &warned);

  result.distribution.kind = games::OutcomeDistribution::Kind::leaf;
  result.utilities.assign(inst.game.players, 0.0);
  for (const auto& [leaf, p] : dist) {
    result.distribution.entries.emplace_back(std::vector<int>{leaf}, p);
    for (int i = 0; i < inst.game.players; ++i) {
      result.utilities[i] += p * inst.game.node(leaf).payoffs[i];
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Early-evaluation deviations
// ---------------------------------------------------------------------------

namespace {

struct DevBranch {
  BranchState state;
  int node = 0;
  double weight = 0.0;
};

struct LookaheadContext {
  const ExtensiveQceInstance* inst = nullptr;
  int player = -1;
  std::set<std::string> early;  // information sets evaluated at the start
  int max_qubits = linalg::kDefaultMaxQubits;
  long long states_visited = 0;
  long long state_cap = classical::kDefaultPlanStateCap;
};

// Advances a branch until the deviator must act or a leaf is reached;
// opponents run their programs, splitting the branch on their measurement
// outcomes (which the deviator does not see).
void advance_branch(LookaheadContext& ctx, DevBranch b, double* leaf_value,
                    std::map<std::pair<std::string, std::string>, std::vector<DevBranch>>* pending) {
  const ExtensiveQceInstance& inst = *ctx.inst;
  while (true) {
    const games::TreeNode& tn = inst.game.node(b.node);
    if (tn.is_leaf()) {
      *leaf_value += b.weight * tn.payoffs[ctx.player];
      return;
    }
    const InfosetProgram* prog = inst.find_program(tn.infoset);
    if (!prog) throw InputError("reached information set '" + tn.infoset + "' has no program");

    if (tn.owner == ctx.player) {
      if (ctx.early.count(tn.infoset) || prog->mix) {
        // Nothing new to observe here: pre-measured circuit or own mix node.
        (*pending)[{tn.infoset, ""}].push_back(std::move(b));
      } else {
        std::vector<int> outputs = apply_circuit(b.state, *prog->circuit, inst.state.qubit_count,
                                                 ctx.max_qubits, nullptr, tn.infoset, nullptr);
        auto outcomes = detail::measure_distribution(b.state.amps, b.state.n, outputs);
        for (const auto& [bits, p] : outcomes) {
          if (p <= kBranchFloor) continue;
          DevBranch next = b;
          next.weight = b.weight * p;
          detail::collapse(next.state.amps, next.state.n, outputs, bits);
          next.state.measured.insert(outputs.begin(), outputs.end());
          (*pending)[{tn.infoset, bits}].push_back(std::move(next));
        }
      }
      return;
    }

    if (prog->mix) {
      for (const auto& [action, p] : *prog->mix) {
        if (p <= kBranchFloor) continue;
        DevBranch next = b;
        next.weight = b.weight * p;
        next.node = follow_edge(tn, action);
        advance_branch(ctx, std::move(next), leaf_value, pending);
      }
      return;
    }
    std::vector<int> outputs = apply_circuit(b.state, *prog->circuit, inst.state.qubit_count,
                                             ctx.max_qubits, nullptr, tn.infoset, nullptr);
    auto outcomes = detail::measure_distribution(b.state.amps, b.state.n, outputs);
    if (outcomes.size() == 1) {
      // Deterministic outcome: stay in the loop instead of recursing.
      const auto& [bits, p] = outcomes.front();
      detail::collapse(b.state.amps, b.state.n, outputs, bits);
      b.state.measured.insert(outputs.begin(), outputs.end());
      b.node = follow_edge(tn, prog->circuit->action_map.at(bits));
      continue;
    }
    for (const auto& [bits, p] : outcomes) {
      if (p <= kBranchFloor) continue;
      DevBranch next = b;
      next.weight = b.weight * p;
      detail::collapse(next.state.amps, next.state.n, outputs, bits);
      next.state.measured.insert(outputs.begin(), outputs.end());
      next.node = follow_edge(tn, prog->circuit->action_map.at(bits));
      advance_branch(ctx, std::move(next), leaf_value, pending);
    }
    return;
  }
}

// Best response-map value over the deviator's knowledge states; `knowledge`
// strings exist only for the plan description.
double response_walk(LookaheadContext& ctx, std::vector<DevBranch> branches,
                     const std::string& knowledge, std::vector<std::string>* plan) {
  double value = 0.0;
  std::map<std::pair<std::string, std::string>, std::vector<DevBranch>> pending;
  for (DevBranch& b : branches) advance_branch(ctx, std::move(b), &value, &pending);

  for (auto& [key, group] : pending) {
    const auto& [infoset, bits] = key;
    if (++ctx.states_visited > ctx.state_cap) {
      throw InputError("lookahead plan space exceeded the configured cap of " +
                       std::to_string(ctx.state_cap) + " knowledge states");
    }
    std::string here = infoset + (bits.empty() ? "" : "=" + bits);
    std::string know = knowledge.empty() ? here : knowledge + ", " + here;
    double best = 0.0;
    std::string best_action;
    std::vector<std::string> best_sub;
    bool first = true;
    for (const std::string& action : ctx.inst->game.infoset_actions(infoset)) {
      std::vector<DevBranch> advanced = group;
      for (DevBranch& b : advanced) {
        b.node = follow_edge(ctx.inst->game.node(b.node), action);
      }
      std::vector<std::string> sub;
      double v = response_walk(ctx, std::move(advanced), know, &sub);
      if (first || v > best) {
        best = v;
        best_action = action;
        best_sub = std::move(sub);
        first = false;
      }
    }
    if (plan) {
      plan->push_back("knowing [" + know + "] play " + best_action);
      plan->insert(plan->end(), best_sub.begin(), best_sub.end());
    }
    value += best;
  }
  return value;
}

}  // namespace

LookaheadResult lookahead_deviation_value(const ExtensiveQceInstance& inst, int player, double eps,
                                          long long plan_state_cap) {
  inst.validate();
  if (player < 0 || player >= inst.game.players) throw InputError("player out of range");

  ExtensiveSimResult on_path = simulate_extensive_qce(inst);

  std::vector<std::string> own = inst.game.infosets_of(player);
  const int k = static_cast<int>(own.size());
  if (k > 16) throw InputError("lookahead subset enumeration is limited to 16 information sets");

  LookaheadResult result;
  result.on_path = on_path.utilities[player];
  bool first = true;

  for (int mask = 0; mask < (1 << k); ++mask) {
    LookaheadContext ctx;
    ctx.inst = &inst;
    ctx.player = player;
    ctx.state_cap = plan_state_cap;
    std::vector<std::string> early_list;
    for (int j = 0; j < k; ++j) {
      if (mask & (1 << j)) {
        ctx.early.insert(own[j]);
        early_list.push_back(own[j]);
      }
    }

    // Pre-evaluate the chosen circuits at the start of play. They act on the
    // deviator's own qubits, so this commutes with everything the opponents
    // later do.
    std::map<std::string, std::vector<DevBranch>> ensembles;
    DevBranch root;
    root.state.amps = inst.state.amplitudes;
    root.state.n = inst.state.qubit_count;
    root.node = inst.game.root;
    root.weight = 1.0;
    ensembles[""].push_back(std::move(root));

    for (const std::string& infoset : early_list) {
      const InfosetProgram* prog = inst.find_program(infoset);
      if (!prog) throw InputError("information set '" + infoset + "' has no program");
      if (prog->mix) continue;  // nothing to run early
      std::map<std::string, std::vector<DevBranch>> next;
      for (auto& [know, branches] : ensembles) {
        for (DevBranch& b : branches) {
          std::vector<int> outputs =
              apply_circuit(b.state, *prog->circuit, inst.state.qubit_count, ctx.max_qubits,
                            nullptr, infoset, nullptr);
          auto outcomes = detail::measure_distribution(b.state.amps, b.state.n, outputs);
          for (const auto& [bits, p] : outcomes) {
            if (p <= kBranchFloor) continue;
            DevBranch nb = b;
            nb.weight = b.weight * p;
            detail::collapse(nb.state.amps, nb.state.n, outputs, bits);
            nb.state.measured.insert(outputs.begin(), outputs.end());
            std::string tag = infoset + "=" + bits;
            next[know.empty() ? tag : know + ", " + tag].push_back(std::move(nb));
          }
        }
      }
      ensembles = std::move(next);
    }

    double value = 0.0;
    std::vector<std::string> plan;
    for (auto& [know, branches] : ensembles) {
      value += response_walk(ctx, std::move(branches), know, &plan);
    }

    if (first || value > result.value + 1e-15) {
      result.value = value;
      result.evaluated_early = early_list;
      result.plan = std::move(plan);
      first = false;
    }
  }

  result.gain = result.value - result.on_path;
  (void)eps;
  return result;
}

}  // namespace corrq::quantum
