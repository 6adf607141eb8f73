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

#include "corrq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "corrq/io.hpp"
#include "sim.hpp"

namespace corrq::scenarios {

using linalg::Complex;

namespace {

const std::array<std::string, 4> kGhzInputs = {"000", "011", "101", "110"};

games::NormalFormGame coordination_game(double top, double side) {
  games::NormalFormGame g;
  g.players = 2;
  g.player_names = {"row", "column"};
  g.actions = {{"T", "B"}, {"L", "R"}};
  g.payoffs = {{0, 0}, {top, side}, {side, top}, {0, 0}};
  return g;
}

}  // namespace

games::NormalFormGame fig1_game() { return coordination_game(1, 5); }
games::NormalFormGame fig2_game() { return coordination_game(6, 6); }
games::NormalFormGame fig4_game() { return coordination_game(7, 10); }

games::ExtensiveFormGame fig3_game() {
  games::ExtensiveFormGame g;
  g.players = 2;
  g.player_names = {"P1", "P2"};
  g.root = 0;
  g.nodes.resize(9);
  auto internal = [](int owner, std::string infoset,
                     std::vector<std::pair<std::string, int>> edges) {
    games::TreeNode n;
    n.kind = games::TreeNode::Kind::internal;
    n.owner = owner;
    n.infoset = std::move(infoset);
    n.edges = std::move(edges);
    return n;
  };
  auto leaf = [](std::vector<double> payoffs) {
    games::TreeNode n;
    n.kind = games::TreeNode::Kind::leaf;
    n.payoffs = std::move(payoffs);
    return n;
  };
  g.nodes[0] = internal(0, "1.root", {{"OUT", 1}, {"IN", 2}});
  g.nodes[1] = leaf({3, 3});
  g.nodes[2] = internal(1, "2", {{"a", 3}, {"b", 4}});
  g.nodes[3] = internal(0, "1.move", {{"L", 5}, {"R", 6}});
  g.nodes[4] = internal(0, "1.move", {{"L", 7}, {"R", 8}});
  g.nodes[5] = leaf({100, 2});
  g.nodes[6] = leaf({0, 0});
  g.nodes[7] = leaf({0, 0});
  g.nodes[8] = leaf({2, 100});
  return g;
}

namespace {

// Appends the three-round output subtree of the coordination game under a
// chosen input assignment. Players `trio` = {alice, bob, charlie} indices;
// `win_payoffs` / `lose_payoffs` fill the leaves.
int append_trio_subtree(games::ExtensiveFormGame& g, const std::string& input,
                        const std::array<int, 3>& trio,
                        const std::array<std::string, 3>& names,
                        const std::vector<double>& win_payoffs,
                        const std::vector<double>& lose_payoffs) {
  int promised = (input.find('1') != std::string::npos) ? 1 : 0;
  auto add_node = [&](games::TreeNode n) {
    g.nodes.push_back(std::move(n));
    return static_cast<int>(g.nodes.size()) - 1;
  };

  // Build bottom-up over the 8 output words.
  std::vector<int> charlie_leaves;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      games::TreeNode charlie;
      charlie.kind = games::TreeNode::Kind::internal;
      charlie.owner = trio[2];
      charlie.infoset = names[2] + "." + input[2];
      for (int z = 0; z < 2; ++z) {
        bool win = ((x + y + z) % 2) == promised;
        games::TreeNode l;
        l.kind = games::TreeNode::Kind::leaf;
        l.payoffs = win ? win_payoffs : lose_payoffs;
        int leaf_id = add_node(std::move(l));
        charlie.edges.emplace_back(z ? "1" : "0", leaf_id);
      }
      charlie_leaves.push_back(add_node(std::move(charlie)));
    }
  }
  std::vector<int> bob_nodes;
  for (int x = 0; x < 2; ++x) {
    games::TreeNode bob;
    bob.kind = games::TreeNode::Kind::internal;
    bob.owner = trio[1];
    bob.infoset = names[1] + "." + input[1];
    for (int y = 0; y < 2; ++y) {
      bob.edges.emplace_back(y ? "1" : "0", charlie_leaves[2 * x + y]);
    }
    bob_nodes.push_back(add_node(std::move(bob)));
  }
  games::TreeNode alice;
  alice.kind = games::TreeNode::Kind::internal;
  alice.owner = trio[0];
  alice.infoset = names[0] + "." + input[0];
  for (int x = 0; x < 2; ++x) alice.edges.emplace_back(x ? "1" : "0", bob_nodes[x]);
  return add_node(std::move(alice));
}

}  // namespace

games::ExtensiveFormGame cghz_game() {
  games::ExtensiveFormGame g;
  g.players = 4;
  g.player_names = {"Nate", "Alice", "Bob", "Charlie"};
  g.root = 0;
  games::TreeNode root;
  root.kind = games::TreeNode::Kind::internal;
  root.owner = 0;
  root.infoset = "nate";
  g.nodes.push_back(root);
  for (const std::string& input : kGhzInputs) {
    int child = append_trio_subtree(g, input, {1, 2, 3}, {"alice", "bob", "charlie"},
                                    {0, 1, 1, 1}, {1, 0, 0, 0});
    g.nodes[0].edges.emplace_back(input, child);
  }
  return g;
}

games::ExtensiveFormGame appf_game() {
  games::ExtensiveFormGame g;
  g.players = 5;
  g.player_names = {"P1", "P2", "Alice", "Bob", "Charlie"};
  g.root = 0;
  auto add_node = [&](games::TreeNode n) {
    g.nodes.push_back(std::move(n));
    return static_cast<int>(g.nodes.size()) - 1;
  };
  g.nodes.resize(1);  // root filled last

  // OUT branch: the coordination game, P1 choosing the inputs. P1 collects 50
  // when the trio fails and nothing when it succeeds; P2 never moves here.
  games::TreeNode nate;
  nate.kind = games::TreeNode::Kind::internal;
  nate.owner = 0;
  nate.infoset = "1.nate";
  for (const std::string& input : kGhzInputs) {
    int child = append_trio_subtree(g, input, {2, 3, 4}, {"alice", "bob", "charlie"},
                                    {0, 0, 1, 1, 1}, {50, 0, 0, 0, 0});
    nate.edges.emplace_back(input, child);
  }
  int out_branch = add_node(std::move(nate));

  // IN branch: unchanged two-player interaction; the trio gets nothing.
  auto leaf5 = [&](double u1, double u2) {
    games::TreeNode l;
    l.kind = games::TreeNode::Kind::leaf;
    l.payoffs = {u1, u2, 0, 0, 0};
    return add_node(std::move(l));
  };
  int in_al = leaf5(100, 2), in_ar = leaf5(0, 0), in_bl = leaf5(0, 0), in_br = leaf5(2, 100);
  games::TreeNode move_a;
  move_a.kind = games::TreeNode::Kind::internal;
  move_a.owner = 0;
  move_a.infoset = "1.move";
  move_a.edges = {{"L", in_al}, {"R", in_ar}};
  int node_a = add_node(std::move(move_a));
  games::TreeNode move_b;
  move_b.kind = games::TreeNode::Kind::internal;
  move_b.owner = 0;
  move_b.infoset = "1.move";
  move_b.edges = {{"L", in_bl}, {"R", in_br}};
  int node_b = add_node(std::move(move_b));
  games::TreeNode p2;
  p2.kind = games::TreeNode::Kind::internal;
  p2.owner = 1;
  p2.infoset = "2";
  p2.edges = {{"a", node_a}, {"b", node_b}};
  int in_branch = add_node(std::move(p2));

  games::TreeNode root;
  root.kind = games::TreeNode::Kind::internal;
  root.owner = 0;
  root.infoset = "1.root";
  root.edges = {{"OUT", out_branch}, {"IN", in_branch}};
  g.nodes[0] = std::move(root);
  return g;
}

quantum::QuantumState fig1_state() {
  quantum::QuantumState s;
  s.qubit_count = 2;
  s.partition = {0, 1};
  s.amplitudes.assign(4, 0.0);
  s.amplitudes[0b01] = 1.0 / std::sqrt(2.0);
  s.amplitudes[0b10] = 1.0 / std::sqrt(2.0);
  return s;
}

quantum::QuantumState fig2_naive_state() {
  quantum::QuantumState s;
  s.qubit_count = 2;
  s.partition = {0, 1};
  s.amplitudes.assign(4, 0.0);
  double v = 1.0 / std::sqrt(3.0);
  s.amplitudes[0b01] = v;
  s.amplitudes[0b10] = v;
  s.amplitudes[0b11] = v;
  return s;
}

quantum::QuantumState appd1_state() {
  quantum::QuantumState s;
  s.qubit_count = 4;
  s.partition = {0, 0, 1, 1};
  s.amplitudes.assign(16, 0.0);
  double r6 = 1.0 / std::sqrt(6.0);
  double r12 = 1.0 / std::sqrt(12.0);
  s.amplitudes[0b0010] = r6;
  s.amplitudes[0b0011] = -r6;
  s.amplitudes[0b1000] = r6;
  s.amplitudes[0b1100] = r6;
  s.amplitudes[0b1010] = r12;
  s.amplitudes[0b1011] = r12;
  s.amplitudes[0b1110] = r12;
  s.amplitudes[0b1111] = r12;
  return s;
}

quantum::QuantumState ghz_state(std::vector<int> partition) {
  quantum::QuantumState s;
  s.qubit_count = 3;
  s.partition = std::move(partition);
  s.amplitudes.assign(8, 0.0);
  s.amplitudes[0b000] = 0.5;
  s.amplitudes[0b011] = -0.5;
  s.amplitudes[0b101] = -0.5;
  s.amplitudes[0b110] = -0.5;
  return s;
}

quantum::QuantumState bell_state(std::vector<int> partition) {
  quantum::QuantumState s;
  s.qubit_count = 2;
  s.partition = std::move(partition);
  s.amplitudes.assign(4, 0.0);
  s.amplitudes[0b00] = 1.0 / std::sqrt(2.0);
  s.amplitudes[0b11] = 1.0 / std::sqrt(2.0);
  return s;
}

quantum::QuantumState appf_state() {
  quantum::QuantumState bell = bell_state({0, 1});
  quantum::QuantumState ghz = ghz_state({2, 3, 4});
  quantum::QuantumState s;
  s.qubit_count = 5;
  s.partition = {0, 1, 2, 3, 4};
  s.amplitudes.assign(32, 0.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 8; ++j) s.amplitudes[i * 8 + j] = bell.amplitudes[i] * ghz.amplitudes[j];
  }
  return s;
}

quantum::QceInstance fig1_instance() {
  return quantum::QceInstance::canonical(fig1_game(), fig1_state());
}

quantum::QceInstance fig2_naive_instance() {
  return quantum::QceInstance::canonical(fig2_game(), fig2_naive_state());
}

quantum::QceInstance fig2_hadamard_instance() {
  quantum::QceInstance inst = fig2_naive_instance();
  inst.circuits[0].gates.push_back({"H", {0}, {}});
  return inst;
}

quantum::QceInstance appd1_instance() {
  return quantum::QceInstance::canonical(fig2_game(), appd1_state());
}

classical::CorrelatingDevice one_third_device() {
  classical::CorrelatingDevice d;
  double third = 1.0 / 3.0;
  d.entries = {{{0, 1}, third}, {{1, 0}, third}, {{1, 1}, third}};
  return d;
}

classical::ExtensiveDevice fig3_device() {
  games::PureStrategy in_l{0, {{"1.root", "IN"}, {"1.move", "L"}}};
  games::PureStrategy in_r{0, {{"1.root", "IN"}, {"1.move", "R"}}};
  games::PureStrategy play_a{1, {{"2", "a"}}};
  games::PureStrategy play_b{1, {{"2", "b"}}};
  classical::ExtensiveDevice d;
  d.entries.push_back({{in_l, play_a}, 0.5});
  d.entries.push_back({{in_r, play_b}, 0.5});
  return d;
}

classical::ExtensiveDevice appf_device() {
  games::PureStrategy in_l{0, {{"1.root", "IN"}, {"1.move", "L"}, {"1.nate", "000"}}};
  games::PureStrategy in_r{0, {{"1.root", "IN"}, {"1.move", "R"}, {"1.nate", "000"}}};
  games::PureStrategy play_a{1, {{"2", "a"}}};
  games::PureStrategy play_b{1, {{"2", "b"}}};
  auto zeros = [](int owner, const std::string& name) {
    return games::PureStrategy{owner, {{name + ".0", "0"}, {name + ".1", "0"}}};
  };
  classical::ExtensiveDevice d;
  d.entries.push_back(
      {{in_l, play_a, zeros(2, "alice"), zeros(3, "bob"), zeros(4, "charlie")}, 0.5});
  d.entries.push_back(
      {{in_r, play_b, zeros(2, "alice"), zeros(3, "bob"), zeros(4, "charlie")}, 0.5});
  return d;
}

classical::ExtensiveDevice cghz_point_device() {
  games::PureStrategy nate{0, {{"nate", "000"}}};
  auto zeros = [](int owner, const std::string& name) {
    return games::PureStrategy{owner, {{name + ".0", "0"}, {name + ".1", "0"}}};
  };
  classical::ExtensiveDevice d;
  d.entries.push_back({{nate, zeros(1, "alice"), zeros(2, "bob"), zeros(3, "charlie")}, 1.0});
  return d;
}

namespace {

quantum::InfosetProgram measure_program(const std::string& infoset, int owner, int qubit,
                                        bool hadamard_first, const std::string& action0,
                                        const std::string& action1) {
  quantum::PlayerCircuit c;
  c.owner = owner;
  if (hadamard_first) c.gates.push_back({"H", {qubit}, {}});
  c.output_qubits = {qubit};
  c.action_map = {{"0", action0}, {"1", action1}};
  quantum::InfosetProgram prog;
  prog.infoset = infoset;
  prog.circuit = std::move(c);
  return prog;
}

quantum::InfosetProgram mix_program(const std::string& infoset,
                                    std::vector<std::pair<std::string, double>> mix) {
  quantum::InfosetProgram prog;
  prog.infoset = infoset;
  prog.mix = std::move(mix);
  return prog;
}

std::vector<quantum::InfosetProgram> trio_programs(int first_player, int first_qubit) {
  std::vector<quantum::InfosetProgram> out;
  const std::array<std::string, 3> names = {"alice", "bob", "charlie"};
  for (int k = 0; k < 3; ++k) {
    out.push_back(
        measure_program(names[k] + ".0", first_player + k, first_qubit + k, false, "0", "1"));
    out.push_back(
        measure_program(names[k] + ".1", first_player + k, first_qubit + k, true, "0", "1"));
  }
  return out;
}

}  // namespace

quantum::ExtensiveQceInstance fig3_quantum_attempt() {
  quantum::ExtensiveQceInstance inst;
  inst.game = fig3_game();
  inst.state = bell_state({0, 1});
  inst.programs.push_back(mix_program("1.root", {{"IN", 1.0}}));
  inst.programs.push_back(measure_program("2", 1, 1, false, "a", "b"));
  inst.programs.push_back(measure_program("1.move", 0, 0, false, "L", "R"));
  return inst;
}

quantum::ExtensiveQceInstance cghz_quantum_protocol() {
  quantum::ExtensiveQceInstance inst;
  inst.game = cghz_game();
  inst.state = ghz_state({1, 2, 3});
  inst.programs.push_back(mix_program(
      "nate", {{"000", 0.25}, {"011", 0.25}, {"101", 0.25}, {"110", 0.25}}));
  for (auto& prog : trio_programs(1, 0)) inst.programs.push_back(std::move(prog));
  return inst;
}

quantum::ExtensiveQceInstance appf_quantum_protocol() {
  quantum::ExtensiveQceInstance inst;
  inst.game = appf_game();
  inst.state = appf_state();
  inst.programs.push_back(mix_program("1.root", {{"IN", 1.0}}));
  inst.programs.push_back(measure_program("2", 1, 1, false, "a", "b"));
  inst.programs.push_back(measure_program("1.move", 0, 0, false, "L", "R"));
  inst.programs.push_back(mix_program(
      "1.nate", {{"000", 0.25}, {"011", 0.25}, {"101", 0.25}, {"110", 0.25}}));
  for (auto& prog : trio_programs(2, 2)) inst.programs.push_back(std::move(prog));
  return inst;
}

GhzQuantumResult ghz_quantum_win_probabilities() {
  GhzQuantumResult result;
  result.inputs = kGhzInputs;
  for (size_t k = 0; k < kGhzInputs.size(); ++k) {
    const std::string& input = kGhzInputs[k];
    quantum::QuantumState s = ghz_state({0, 1, 2});
    quantum::detail::Amps amps = s.amplitudes;
    for (int q = 0; q < 3; ++q) {
      if (input[q] == '1') {
        quantum::detail::apply_gate(amps, 3, {"H", {q}, {}}, {q});
      }
    }
    int promised = (input.find('1') != std::string::npos) ? 1 : 0;
    double win = 0.0;
    for (int outcome = 0; outcome < 8; ++outcome) {
      int parity = __builtin_popcount(static_cast<unsigned>(outcome)) % 2;
      if (parity == promised) win += std::norm(amps[outcome]);
    }
    result.win_probability[k] = win;
  }
  return result;
}

GhzClassicalResult ghz_classical_brute_force() {
  GhzClassicalResult result;
  result.profile_count = 64;
  result.every_profile_defeated = true;
  result.min_best_response = 1.0;
  double max_win = 0.0;
  // A deterministic strategy maps the own input bit to an output bit:
  // 4 choices per player, encoded as (f(0), f(1)).
  for (int fa = 0; fa < 4; ++fa) {
    for (int fb = 0; fb < 4; ++fb) {
      for (int fc = 0; fc < 4; ++fc) {
        int wins = 0;
        double best_response = 0.0;
        for (const std::string& input : kGhzInputs) {
          int a = input[0] - '0', b = input[1] - '0', c = input[2] - '0';
          int x = (fa >> a) & 1, y = (fb >> b) & 1, z = (fc >> c) & 1;
          bool win = ((x + y + z) % 2) == (a | b | c);
          if (win) ++wins;
          best_response = std::max(best_response, win ? 0.0 : 1.0);
        }
        max_win = std::max(max_win, wins / 4.0);
        if (wins == 4) result.every_profile_defeated = false;
        result.min_best_response = std::min(result.min_best_response, best_response);
      }
    }
  }
  result.max_win_probability = max_win;
  return result;
}

// ---------------------------------------------------------------------------
// Scenario runner
// ---------------------------------------------------------------------------

namespace {

void add_near(ScenarioReport& r, const std::string& name, double value, double expected,
              double tol, const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.expected = expected;
  c.tolerance = tol;
  c.pass = std::isfinite(value) && std::abs(value - expected) <= tol;
  c.detail = detail;
  r.checks.push_back(std::move(c));
}

void add_at_least(ScenarioReport& r, const std::string& name, double value, double threshold,
                  const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.expected = threshold;
  c.tolerance = 0.0;
  c.pass = std::isfinite(value) && value >= threshold;
  c.detail = detail.empty() ? "must be at least the expected value" : detail;
  r.checks.push_back(std::move(c));
}

void add_flag(ScenarioReport& r, const std::string& name, bool ok,
              const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = ok ? 1.0 : 0.0;
  c.expected = 1.0;
  c.tolerance = 0.0;
  c.pass = ok;
  c.detail = detail;
  r.checks.push_back(std::move(c));
}

double profile_probability(const games::OutcomeDistribution& d, std::vector<int> key) {
  return d.probability(key);
}

std::vector<std::array<double, 2>> row_payoffs_fig2(const quantum::ConditionalStateFamily& f,
                                                    const games::NormalFormGame& g) {
  std::vector<std::array<double, 2>> payoffs;
  for (const auto& e : f.entries) {
    payoffs.push_back({g.payoff({0, e.advice_actions[0]}, 0), g.payoff({1, e.advice_actions[0]}, 0)});
  }
  return payoffs;
}

void run_fig1(ScenarioReport& r, const RunOptions& opt) {
  quantum::QceInstance inst = fig1_instance();
  games::OutcomeDistribution dist = quantum::simulate_normal_qce(inst);
  add_near(r, "p(T,R)", profile_probability(dist, {0, 1}), 0.5, 1e-12);
  add_near(r, "p(B,L)", profile_probability(dist, {1, 0}), 0.5, 1e-12);
  add_near(r, "off-support mass", profile_probability(dist, {0, 0}) + profile_probability(dist, {1, 1}),
           0.0, 1e-12);
  quantum::QceReport report = quantum::verify_canonical_qce(inst, opt.eps);
  add_flag(r, "verdict equilibrium", report.verdict == quantum::QceReport::Verdict::equilibrium);
  add_near(r, "max gain", report.max_gain(), 0.0, 1e-9);
  classical::EquilibriumReport ce = classical::verify_ce(fig1_game(), quantum::qce_to_ce(inst), 1e-6);
  add_flag(r, "induced device is a correlated equilibrium", ce.equilibrium);
}

void run_fig2_naive(ScenarioReport& r, const RunOptions& opt) {
  games::OutcomeDistribution dist = quantum::simulate_normal_qce(fig2_hadamard_instance());
  add_near(r, "p(T,L) after Hadamard", profile_probability(dist, {0, 0}), 1.0 / 6.0, 1e-12);
  add_near(r, "p(T,R) after Hadamard", profile_probability(dist, {0, 1}), 2.0 / 3.0, 1e-12);
  add_near(r, "p(B,L) after Hadamard", profile_probability(dist, {1, 0}), 1.0 / 6.0, 1e-12);

  quantum::QceInstance canonical = quantum::canonicalize(fig2_hadamard_instance());
  double r6 = 1.0 / std::sqrt(6.0);
  add_near(r, "canonical amplitude |00>", std::abs(canonical.state.amplitudes[0b00] - Complex(r6, 0)),
           0.0, 1e-12);
  add_near(r, "canonical amplitude |01>",
           std::abs(canonical.state.amplitudes[0b01] - Complex(2 * r6, 0)), 0.0, 1e-12);
  add_near(r, "canonical amplitude |10>",
           std::abs(canonical.state.amplitudes[0b10] - Complex(-r6, 0)), 0.0, 1e-12);

  games::NormalFormGame g = fig2_game();
  double row_utility = 0.0;
  for (const auto& [profile, p] : dist.entries) row_utility += p * g.payoff(profile, 0);
  add_near(r, "row utility after Hadamard", row_utility, 5.0, 1e-12);

  quantum::QceInstance inst = fig2_naive_instance();
  quantum::QceReport report = quantum::verify_canonical_qce(inst, opt.eps);
  add_flag(r, "verdict not equilibrium",
           report.verdict == quantum::QceReport::Verdict::not_equilibrium);
  add_near(r, "row deviation value", report.players[0].deviation_value, 3.0 + std::sqrt(5.0), 1e-9);
  add_near(r, "row gain", report.players[0].gain, std::sqrt(5.0) - 1.0, 1e-9);

  quantum::ConditionalStateFamily family = quantum::conditional_states(inst, 0);
  quantum::DeviationCriterion crit = quantum::deviation_criterion(family);
  add_near(r, "criterion trace value", crit.trace_value, std::sqrt(5.0) / 3.0, 1e-9);
  add_flag(r, "criterion flags incentive", crit.has_incentive);
}

void run_fig2_no_qce(ScenarioReport& r, const RunOptions& opt) {
  quantum::ConditionalStateFamily family =
      quantum::conditional_states(fig2_naive_instance(), 0);
  quantum::DeviationCriterion crit = quantum::deviation_criterion(family);
  add_flag(r, "naive state flags incentive", crit.has_incentive,
           "trace value " + std::to_string(crit.trace_value));

  quantum::ConstraintReport cr = quantum::appendix_d_report(fig2_naive_state());
  add_flag(r, "naive state violates the block constraints", !cr.passes(opt.eps),
           "sigma2 norm " + std::to_string(cr.sigma2_norm));
  add_at_least(r, "naive sigma2 norm", cr.sigma2_norm, 0.4);

  quantum::SearchResult search = quantum::infeasibility_search(1, 1, opt.restarts, opt.seed);
  add_at_least(r, "search residual floor (2-qubit)", search.min_residual, 1e-3);
  add_flag(r, "gram-chain trace bound holds", search.bound_holds);
}

void run_fig4_ce(ScenarioReport& r, const RunOptions& opt) {
  games::NormalFormGame g = fig4_game();
  classical::EquilibriumReport report = classical::verify_ce(g, one_third_device(), opt.eps);
  add_flag(r, "verdict equilibrium", report.equilibrium);
  add_near(r, "max gain", report.max_gain(), 0.0, 1e-12);
  // Conditional on advice B the row player faces L and R with equal odds.
  double u_t_given_b = 0.5 * g.payoff({0, 0}, 0) + 0.5 * g.payoff({0, 1}, 0);
  double u_b_given_b = 0.5 * g.payoff({1, 0}, 0) + 0.5 * g.payoff({1, 1}, 0);
  add_near(r, "row utility of T given advice B", u_t_given_b, 3.5, 1e-12);
  add_near(r, "row utility of B given advice B", u_b_given_b, 5.0, 1e-12);
}

void run_appd1(ScenarioReport& r, const RunOptions& opt) {
  quantum::QceInstance inst = appd1_instance();
  classical::CorrelatingDevice device = quantum::qce_to_ce(inst);
  games::OutcomeDistribution dist = device.outcome_distribution();
  add_near(r, "p(T,R)", profile_probability(dist, {0, 1}), 1.0 / 3.0, 1e-9);
  add_near(r, "p(B,L)", profile_probability(dist, {1, 0}), 1.0 / 3.0, 1e-9);
  add_near(r, "p(B,R)", profile_probability(dist, {1, 1}), 1.0 / 3.0, 1e-9);

  quantum::QceReport report = quantum::verify_canonical_qce(inst, opt.eps);
  add_flag(r, "verdict not equilibrium",
           report.verdict == quantum::QceReport::Verdict::not_equilibrium);
  add_near(r, "row deviation value", report.players[0].deviation_value, 4.0, 1e-9);
  add_near(r, "row gain", report.players[0].gain, 0.0, 1e-9);
  add_near(r, "column deviation value", report.players[1].deviation_value, 6.0, 1e-9);
  add_near(r, "column gain", report.players[1].gain, 2.0, 1e-9);
}

void run_fig3(ScenarioReport& r, const RunOptions& opt) {
  games::ExtensiveFormGame g = fig3_game();
  classical::ExtensiveDevice device = fig3_device();

  classical::EquilibriumReport efce = classical::verify_efce(g, device, opt.eps);
  add_flag(r, "EFCE verdict equilibrium", efce.equilibrium);
  add_near(r, "P1 on-path utility", efce.on_path[0], 51.0, 1e-12);

  classical::EquilibriumReport ir = classical::verify_ir_efce(g, device, opt.eps);
  add_flag(r, "IR-EFCE verdict not equilibrium", !ir.equilibrium);
  add_near(r, "P1 immediate-revelation gain", ir.gains[0], 0.5, 1e-9);
  add_near(r, "P1 immediate-revelation value", ir.on_path[0] + ir.gains[0], 51.5, 1e-9);

  quantum::LookaheadResult look =
      quantum::lookahead_deviation_value(fig3_quantum_attempt(), 0, opt.eps);
  add_near(r, "P1 lookahead value", look.value, 51.5, 1e-9);
  add_flag(r, "lookahead refutes the protocol", look.gain > opt.eps);
}

void run_ghz(ScenarioReport& r, const RunOptions&) {
  GhzQuantumResult q = ghz_quantum_win_probabilities();
  for (size_t k = 0; k < q.inputs.size(); ++k) {
    add_near(r, "quantum win probability on " + q.inputs[k], q.win_probability[k], 1.0, 1e-12);
  }
  GhzClassicalResult c = ghz_classical_brute_force();
  add_near(r, "classical max win probability", c.max_win_probability, 0.75, 1e-12);
  add_flag(r, "every deterministic profile is defeated", c.every_profile_defeated);
  add_near(r, "worst-case best response of the chooser", c.min_best_response, 1.0, 1e-12);
}

void run_cghz(ScenarioReport& r, const RunOptions& opt) {
  quantum::ExtensiveSimResult sim = quantum::simulate_extensive_qce(cghz_quantum_protocol());
  add_near(r, "Nate utility", sim.utilities[0], 0.0, 1e-12);
  add_near(r, "Alice utility", sim.utilities[1], 1.0, 1e-12);
  add_near(r, "Bob utility", sim.utilities[2], 1.0, 1e-12);
  add_near(r, "Charlie utility", sim.utilities[3], 1.0, 1e-12);

  GhzClassicalResult c = ghz_classical_brute_force();
  add_flag(r, "no classical profile wins surely", c.every_profile_defeated);
  add_at_least(r, "Nate best-response payoff over all profiles", c.min_best_response, 1.0,
               "Nate can always defeat fixed advice");

  classical::EquilibriumReport efce = classical::verify_efce(cghz_game(), cghz_point_device(), opt.eps);
  add_flag(r, "point advice is not an EFCE", !efce.equilibrium);
  add_at_least(r, "Nate gain against point advice", efce.gains[0], 1.0 - 1e-9);

  for (int player = 0; player < 4; ++player) {
    quantum::LookaheadResult look =
        quantum::lookahead_deviation_value(cghz_quantum_protocol(), player, opt.eps);
    add_near(r, "lookahead gain of " + cghz_game().player_name(player), std::max(look.gain, 0.0),
             0.0, 1e-9);
  }
}

void run_appf(ScenarioReport& r, const RunOptions& opt) {
  games::ExtensiveFormGame g = appf_game();
  quantum::ExtensiveSimResult sim = quantum::simulate_extensive_qce(appf_quantum_protocol());
  classical::ExtensiveDevice device = appf_device();
  games::OutcomeDistribution target = device.outcome_distribution(g);
  double worst = 0.0;
  for (const auto& [leaf, p] : target.entries) {
    worst = std::max(worst, std::abs(sim.distribution.probability(leaf) - p));
  }
  double mass = 0.0;
  for (const auto& [leaf, p] : sim.distribution.entries) mass += p;
  add_near(r, "protocol reproduces the target distribution", worst, 0.0, 1e-12);
  add_near(r, "distribution mass", mass, 1.0, 1e-12);

  classical::EquilibriumReport efce = classical::verify_efce(g, device, opt.eps);
  add_flag(r, "EFCE verdict equilibrium", efce.equilibrium);
  add_near(r, "P1 on-path utility", efce.on_path[0], 51.0, 1e-12);

  classical::EquilibriumReport ir = classical::verify_ir_efce(g, device, opt.eps);
  add_flag(r, "IR-EFCE verdict not equilibrium", !ir.equilibrium);
  add_at_least(r, "P1 immediate-revelation gain", ir.gains[0], 50.0 / 4.0 - 2.0);

  for (int player = 0; player < g.players; ++player) {
    quantum::LookaheadResult look =
        quantum::lookahead_deviation_value(appf_quantum_protocol(), player, opt.eps);
    add_near(r, "lookahead gain of " + g.player_name(player), std::max(look.gain, 0.0), 0.0, 1e-9);
  }
}

}  // namespace

std::vector<std::string> list_scenarios() {
  return {"fig1", "fig2_naive", "fig2_no_qce", "fig4_ce", "appD1_state",
          "fig3_efce", "ghz", "cghz", "appF"};
}

ScenarioReport run_scenario(const std::string& name, const RunOptions& opt) {
  ScenarioReport r;
  r.scenario = name;
  if (name == "fig1") {
    run_fig1(r, opt);
  } else if (name == "fig2_naive") {
    run_fig2_naive(r, opt);
  } else if (name == "fig2_no_qce") {
    run_fig2_no_qce(r, opt);
  } else if (name == "fig4_ce") {
    run_fig4_ce(r, opt);
  } else if (name == "appD1_state") {
    run_appd1(r, opt);
  } else if (name == "fig3_efce") {
    run_fig3(r, opt);
  } else if (name == "ghz") {
    run_ghz(r, opt);
  } else if (name == "cghz") {
    run_cghz(r, opt);
  } else if (name == "appF") {
    run_appf(r, opt);
  } else {
    throw InputError("unknown scenario '" + name + "'");
  }
  r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  return r;
}

std::vector<std::string> export_scenario(const std::string& name, const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::string> written;
  auto put = [&](const std::string& file, const std::string& text) {
    io::write_file((fs::path(directory) / file).string(), text);
    written.push_back(file);
  };

  if (name == "fig1") {
    put("fig1.game", io::serialize_normal_form(fig1_game()));
    put("fig1.state", io::serialize_state(fig1_state()));
    put("fig1.circuits", io::serialize_circuits(fig1_instance().circuits));
    put("fig1.device", io::serialize_device(fig1_game(), quantum::qce_to_ce(fig1_instance())));
  } else if (name == "fig2_naive" || name == "fig2_no_qce") {
    put("fig2.game", io::serialize_normal_form(fig2_game()));
    put("fig2_naive.state", io::serialize_state(fig2_naive_state()));
    put("fig2_naive.circuits", io::serialize_circuits(fig2_naive_instance().circuits));
    put("fig2_hadamard.circuits", io::serialize_circuits(fig2_hadamard_instance().circuits));
  } else if (name == "fig4_ce") {
    put("fig4.game", io::serialize_normal_form(fig4_game()));
    put("fig4_ce.device", io::serialize_device(fig4_game(), one_third_device()));
  } else if (name == "appD1_state") {
    put("fig2.game", io::serialize_normal_form(fig2_game()));
    put("appd1.state", io::serialize_state(appd1_state()));
  } else if (name == "fig3_efce") {
    put("fig3.game", io::serialize_extensive_form(fig3_game()));
    put("fig3_efce.device", io::serialize_extensive_device(fig3_game(), fig3_device()));
    quantum::ExtensiveQceInstance attempt = fig3_quantum_attempt();
    put("fig3_quantum.state", io::serialize_state(attempt.state));
    put("fig3_quantum.programs", io::serialize_programs(attempt.programs));
  } else if (name == "ghz" || name == "cghz") {
    put("cghz.game", io::serialize_extensive_form(cghz_game()));
    quantum::ExtensiveQceInstance protocol = cghz_quantum_protocol();
    put("cghz.state", io::serialize_state(protocol.state));
    put("cghz.programs", io::serialize_programs(protocol.programs));
    put("cghz_point.device", io::serialize_extensive_device(cghz_game(), cghz_point_device()));
  } else if (name == "appF") {
    put("appf.game", io::serialize_extensive_form(appf_game()));
    put("appf.device", io::serialize_extensive_device(appf_game(), appf_device()));
    quantum::ExtensiveQceInstance protocol = appf_quantum_protocol();
    put("appf.state", io::serialize_state(protocol.state));
    put("appf.programs", io::serialize_programs(protocol.programs));
  } else {
    throw InputError("unknown scenario '" + name + "'");
  }
  return written;
}

}  // namespace corrq::scenarios
