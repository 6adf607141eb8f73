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
// corrq: analyze classical and quantum correlated equilibria in small
// complete-information games. Exit codes: 0 verdict positive / analysis ran,
// 1 verdict negative, 2 input error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "corrq/classical.hpp"
#include "corrq/games.hpp"
#include "corrq/io.hpp"
#include "corrq/quantum.hpp"
#include "corrq/scenarios.hpp"

namespace {

using corrq::InputError;
using corrq::NumericError;
using nlohmann::json;
namespace classical = corrq::classical;
namespace games = corrq::games;
namespace io = corrq::io;
namespace quantum = corrq::quantum;
namespace scenarios = corrq::scenarios;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Options {
  double eps = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 100;
  int max_qubits = 14;
  std::string format = "human";
  std::string out;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Every command renders both forms; --format picks which goes to stdout.
struct Report {
  std::vector<std::string> lines;
  json machine = json::object();

  void say(const std::string& line) { lines.push_back(line); }
  void emit(const Options& opt) const {
    if (opt.format == "machine") {
      std::cout << machine.dump(2) << "\n";
    } else {
      for (const auto& line : lines) std::cout << line << "\n";
    }
  }
};

json distribution_json(const games::OutcomeDistribution& dist, const games::NormalFormGame* g) {
  json entries = json::array();
  for (const auto& [key, p] : dist.entries) {
    json e;
    if (dist.kind == games::OutcomeDistribution::Kind::action_profile && g) {
      json profile = json::array();
      for (int i = 0; i < g->players; ++i) profile.push_back(g->actions[i][key[i]]);
      e["profile"] = std::move(profile);
    } else if (dist.kind == games::OutcomeDistribution::Kind::leaf) {
      e["leaf"] = key[0];
    } else {
      e["profile"] = key;
    }
    e["probability"] = p;
    entries.push_back(std::move(e));
  }
  json out;
  out["kind"] = dist.kind == games::OutcomeDistribution::Kind::leaf ? "leaf" : "action_profile";
  out["entries"] = std::move(entries);
  return out;
}

std::string profile_label(const games::NormalFormGame& g, const std::vector<int>& profile) {
  std::string out = "(";
  for (int i = 0; i < g.players; ++i) {
    if (i) out += ",";
    out += g.actions[i][profile[i]];
  }
  return out + ")";
}

json equilibrium_json(const classical::EquilibriumReport& r,
                      const std::vector<std::string>& player_names) {
  json players = json::array();
  for (size_t i = 0; i < r.gains.size(); ++i) {
    json p;
    p["player"] = i;
    if (i < player_names.size()) p["name"] = player_names[i];
    p["on_path"] = r.on_path[i];
    p["gain"] = r.gains[i];
    p["best_value"] = r.witnesses[i].achieved_utility;
    p["plan"] = r.witnesses[i].plan;
    players.push_back(std::move(p));
  }
  json out;
  out["verdict"] = r.equilibrium ? "equilibrium" : "not-equilibrium";
  out["eps"] = r.eps;
  out["max_gain"] = r.max_gain();
  out["players"] = std::move(players);
  return out;
}

void describe_equilibrium(Report& rep, const classical::EquilibriumReport& r,
                          const games::NormalFormGame* g,
                          const std::vector<std::string>& names) {
  rep.say(std::string("verdict: ") + (r.equilibrium ? "equilibrium" : "not-equilibrium") +
          " (max gain " + num(r.max_gain()) + ", eps " + num(r.eps) + ")");
  for (size_t i = 0; i < r.gains.size(); ++i) {
    std::string name = i < names.size() && !names[i].empty() ? names[i]
                                                             : "player " + std::to_string(i);
    rep.say("  " + name + ": on-path " + num(r.on_path[i]) + ", best deviation " +
            num(r.witnesses[i].achieved_utility) + ", gain " + num(r.gains[i]));
    if (r.gains[i] > r.eps) {
      for (const auto& line : r.witnesses[i].plan) rep.say("    " + line);
    }
  }
  rep.machine = equilibrium_json(r, names);
  (void)g;
}

json qce_report_json(const quantum::QceReport& r, const games::NormalFormGame& g) {
  json players = json::array();
  for (const auto& p : r.players) {
    json pj;
    pj["player"] = p.player;
    pj["name"] = g.player_name(p.player);
    pj["method"] = p.method == quantum::PlayerAnalysis::Method::exact_binary     ? "helstrom"
                   : p.method == quantum::PlayerAnalysis::Method::exact_classical ? "classical"
                   : p.method == quantum::PlayerAnalysis::Method::certified       ? "certified"
                                                                                  : "sampled";
    pj["on_path"] = p.on_path;
    pj["deviation_value"] = p.deviation_value;
    pj["gain"] = p.gain;
    if (p.measurement.rows() > 0) {
      json m = json::array();
      for (int i = 0; i < p.measurement.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < p.measurement.cols(); ++j) {
          row.push_back(json::array({p.measurement(i, j).real(), p.measurement(i, j).imag()}));
        }
        m.push_back(std::move(row));
      }
      pj["measurement"] = std::move(m);
    }
    players.push_back(std::move(pj));
  }
  json out;
  out["verdict"] = r.verdict == quantum::QceReport::Verdict::equilibrium ? "equilibrium"
                   : r.verdict == quantum::QceReport::Verdict::not_equilibrium
                       ? "not-equilibrium"
                       : "undetermined";
  out["eps"] = r.eps;
  out["max_gain"] = r.max_gain();
  out["players"] = std::move(players);
  return out;
}

json constraint_json(const quantum::ConstraintReport& r, double eps) {
  json out;
  out["passes"] = r.passes(eps);
  out["eps"] = eps;
  out["distribution_residual"] = r.distribution_residual;
  out["sigma2_norm"] = r.sigma2_norm;
  out["sigma3_residual"] = r.sigma3_residual;
  out["col_sigma2_norm"] = r.col_sigma2_norm;
  out["col_sigma3_residual"] = r.col_sigma3_residual;
  out["trace_a_residual"] = r.trace_a_residual;
  out["trace_b_residual"] = r.trace_b_residual;
  out["trace_c_residual"] = r.trace_c_residual;
  out["ac_residual"] = r.ac_residual;
  out["btc_residual"] = r.btc_residual;
  out["bbcc_residual"] = r.bbcc_residual;
  out["aacc_residual"] = r.aacc_residual;
  out["sum_squares"] = r.sum_squares();
  return out;
}

void describe_constraints(Report& rep, const quantum::ConstraintReport& r, double eps) {
  rep.say(std::string("constraint system: ") + (r.passes(eps) ? "satisfied" : "violated") +
          " (eps " + num(eps) + ")");
  rep.say("  distribution residual   " + num(r.distribution_residual));
  rep.say("  sigma2 norm (row)       " + num(r.sigma2_norm));
  rep.say("  sigma3 residual (row)   " + num(r.sigma3_residual));
  rep.say("  sigma2 norm (column)    " + num(r.col_sigma2_norm));
  rep.say("  sigma3 residual (col)   " + num(r.col_sigma3_residual));
  rep.say("  trace residuals A/B/C   " + num(r.trace_a_residual) + " " + num(r.trace_b_residual) +
          " " + num(r.trace_c_residual));
  rep.say("  AC-dagger residual      " + num(r.ac_residual));
  rep.say("  B-dagger-C residual     " + num(r.btc_residual));
  rep.say("  BB-CC residual          " + num(r.bbcc_residual));
  rep.say("  AA-CC residual          " + num(r.aacc_residual));
  rep.machine = constraint_json(r, eps);
}

games::NormalFormGame load_normal_game(const std::string& path) {
  auto game = io::parse_game(io::read_file(path));
  if (std::holds_alternative<games::NormalFormGame>(game)) {
    return std::get<games::NormalFormGame>(game);
  }
  throw InputError("'" + path + "' holds an extensive-form game; a normal-form game is needed");
}

games::ExtensiveFormGame load_extensive_game(const std::string& path) {
  auto game = io::parse_game(io::read_file(path));
  if (std::holds_alternative<games::ExtensiveFormGame>(game)) {
    return std::get<games::ExtensiveFormGame>(game);
  }
  throw InputError("'" + path + "' holds a normal-form game; an extensive-form game is needed");
}

quantum::QceInstance build_instance(const std::string& state_path, const std::string& game_path,
                                    const std::string& circuits_path, const Options& opt) {
  games::NormalFormGame g = load_normal_game(game_path);
  quantum::QuantumState s = io::parse_state(io::read_file(state_path));
  if (circuits_path.empty()) {
    return quantum::QceInstance::canonical(std::move(g), std::move(s));
  }
  quantum::QceInstance inst;
  inst.game = std::move(g);
  inst.state = std::move(s);
  inst.circuits = io::parse_circuits(io::read_file(circuits_path));
  inst.validate(opt.max_qubits);
  return inst;
}

quantum::ExtensiveQceInstance build_extensive_instance(const std::string& state_path,
                                                       const std::string& game_path,
                                                       const std::string& programs_path,
                                                       const Options& opt) {
  quantum::ExtensiveQceInstance inst;
  inst.game = load_extensive_game(game_path);
  inst.state = io::parse_state(io::read_file(state_path));
  inst.programs = io::parse_programs(io::read_file(programs_path));
  inst.validate(opt.max_qubits);
  return inst;
}

void maybe_write(const Options& opt, const std::string& text) {
  if (!opt.out.empty()) io::write_file(opt.out, text);
}

// ---------------------------------------------------------------------------
// Command bodies
// ---------------------------------------------------------------------------

int cmd_ce_verify(const Options& opt, const std::string& game_path,
                  const std::string& device_path) {
  games::NormalFormGame g = load_normal_game(game_path);
  classical::CorrelatingDevice d = io::parse_device(g, io::read_file(device_path));
  classical::EquilibriumReport r = classical::verify_ce(g, d, opt.eps);
  Report rep;
  std::vector<std::string> names;
  for (int i = 0; i < g.players; ++i) names.push_back(g.player_name(i));
  describe_equilibrium(rep, r, &g, names);
  rep.emit(opt);
  return r.equilibrium ? kExitPass : kExitFail;
}

int cmd_ce_find(const Options& opt, const std::string& game_path, const std::string& objective) {
  games::NormalFormGame g = load_normal_game(game_path);
  std::optional<classical::CellObjective> obj;
  if (objective == "welfare") {
    obj = classical::social_welfare_objective(g);
  } else if (objective.rfind("player:", 0) == 0) {
    obj = classical::player_utility_objective(g, std::stoi(objective.substr(7)));
  } else if (!objective.empty()) {
    throw InputError("unknown objective '" + objective + "' (use welfare or player:<index>)");
  }
  classical::CorrelatingDevice d = classical::find_ce(g, obj);
  std::string serialized = io::serialize_device(g, d);
  maybe_write(opt, serialized);

  Report rep;
  double value = 0.0;
  if (obj) {
    for (const auto& e : d.entries) value += e.probability * obj->weights[g.cell_index(e.profile)];
  }
  rep.say("found a correlated equilibrium with " + std::to_string(d.entries.size()) +
          " support profiles" + (obj ? ", objective value " + num(value) : ""));
  for (const auto& e : d.entries) {
    rep.say("  " + profile_label(g, e.profile) + "  p = " + num(e.probability));
  }
  rep.machine = json::parse(serialized);
  if (obj) rep.machine["objective_value"] = value;
  rep.emit(opt);
  return kExitPass;
}

int cmd_efce_verify(const Options& opt, const std::string& game_path,
                    const std::string& device_path, bool immediate_revelation) {
  games::ExtensiveFormGame g = load_extensive_game(game_path);
  classical::ExtensiveDevice d = io::parse_extensive_device(g, io::read_file(device_path));
  classical::EquilibriumReport r = immediate_revelation ? classical::verify_ir_efce(g, d, opt.eps)
                                                        : classical::verify_efce(g, d, opt.eps);
  Report rep;
  std::vector<std::string> names;
  for (int i = 0; i < g.players; ++i) names.push_back(g.player_name(i));
  describe_equilibrium(rep, r, nullptr, names);
  rep.emit(opt);
  return r.equilibrium ? kExitPass : kExitFail;
}

int cmd_to_normal_form(const Options& opt, const std::string& game_path) {
  games::ExtensiveFormGame g = load_extensive_game(game_path);
  games::NormalFormConversion nf = games::to_normal_form(g);
  std::string serialized = io::serialize_normal_form(nf.game);
  maybe_write(opt, serialized);
  Report rep;
  rep.say("normal-form equivalent: " + std::to_string(nf.game.players) + " players, " +
          std::to_string(nf.game.cell_count()) + " cells");
  for (int i = 0; i < nf.game.players; ++i) {
    rep.say("  " + nf.game.player_name(i) + ": " + std::to_string(nf.game.action_count(i)) +
            " strategies");
  }
  rep.machine = json::parse(serialized);
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_simulate(const Options& opt, const std::string& state_path,
                     const std::string& game_path, const std::string& circuits_path) {
  quantum::QceInstance inst = build_instance(state_path, game_path, circuits_path, opt);
  games::OutcomeDistribution dist = quantum::simulate_normal_qce(inst, opt.max_qubits);
  Report rep;
  rep.say("outcome distribution:");
  for (const auto& [profile, p] : dist.entries) {
    rep.say("  " + profile_label(inst.game, profile) + "  p = " + num(p));
  }
  for (int i = 0; i < inst.game.players; ++i) {
    double u = 0.0;
    for (const auto& [profile, p] : dist.entries) u += p * inst.game.payoff(profile, i);
    rep.say("utility of " + inst.game.player_name(i) + ": " + num(u));
  }
  rep.machine = distribution_json(dist, &inst.game);
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_canonicalize(const Options& opt, const std::string& state_path,
                         const std::string& game_path, const std::string& circuits_path,
                         const std::string& out_state, const std::string& out_circuits) {
  quantum::QceInstance inst = build_instance(state_path, game_path, circuits_path, opt);
  quantum::QceInstance canonical = quantum::canonicalize(inst, opt.max_qubits);
  if (!out_state.empty()) io::write_file(out_state, io::serialize_state(canonical.state));
  if (!out_circuits.empty()) {
    io::write_file(out_circuits, io::serialize_circuits(canonical.circuits));
  }
  Report rep;
  rep.say("canonical state on " + std::to_string(canonical.state.qubit_count) + " qubits:");
  for (size_t i = 0; i < canonical.state.amplitudes.size(); ++i) {
    const auto& a = canonical.state.amplitudes[i];
    if (std::abs(a) < 1e-12) continue;
    std::string bits;
    for (int q = 0; q < canonical.state.qubit_count; ++q) {
      bits += ((i >> (canonical.state.qubit_count - 1 - q)) & 1) ? '1' : '0';
    }
    rep.say("  |" + bits + ">  " + num(a.real()) + (a.imag() >= 0 ? " + " : " - ") +
            num(std::abs(a.imag())) + "i");
  }
  rep.machine["state"] = json::parse(io::serialize_state(canonical.state));
  rep.machine["circuits"] = json::parse(io::serialize_circuits(canonical.circuits));
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_verify(const Options& opt, const std::string& state_path,
                   const std::string& game_path, const std::string& circuits_path) {
  quantum::QceInstance inst = build_instance(state_path, game_path, circuits_path, opt);
  if (!inst.is_canonical()) inst = quantum::canonicalize(inst, opt.max_qubits);
  quantum::QceReport r = quantum::verify_canonical_qce(inst, opt.eps, nullptr, opt.seed);
  Report rep;
  std::string verdict = r.verdict == quantum::QceReport::Verdict::equilibrium ? "equilibrium"
                        : r.verdict == quantum::QceReport::Verdict::not_equilibrium
                            ? "not-equilibrium"
                            : "undetermined";
  rep.say("verdict: " + verdict + " (max gain " + num(r.max_gain()) + ", eps " + num(opt.eps) +
          ")");
  for (const auto& p : r.players) {
    rep.say("  " + inst.game.player_name(p.player) + ": on-path " + num(p.on_path) +
            ", best deviation " + num(p.deviation_value) + ", gain " + num(p.gain));
    if (p.gain > opt.eps && p.measurement.rows() > 0) {
      rep.say("    deviation measurement (projector for action '" +
              inst.game.actions[p.player][0] + "'):");
      for (int i = 0; i < p.measurement.rows(); ++i) {
        std::string row = "      [";
        for (int j = 0; j < p.measurement.cols(); ++j) {
          if (j) row += ", ";
          row += num(p.measurement(i, j).real()) + (p.measurement(i, j).imag() >= 0 ? "+" : "-") +
                 num(std::abs(p.measurement(i, j).imag())) + "i";
        }
        rep.say(row + "]");
      }
    }
  }
  rep.machine = qce_report_json(r, inst.game);
  rep.emit(opt);
  return r.verdict == quantum::QceReport::Verdict::equilibrium ? kExitPass : kExitFail;
}

int cmd_qce_to_ce(const Options& opt, const std::string& state_path,
                  const std::string& game_path, const std::string& circuits_path) {
  quantum::QceInstance inst = build_instance(state_path, game_path, circuits_path, opt);
  if (!inst.is_canonical()) inst = quantum::canonicalize(inst, opt.max_qubits);
  classical::CorrelatingDevice d = quantum::qce_to_ce(inst);
  std::string serialized = io::serialize_device(inst.game, d);
  maybe_write(opt, serialized);
  Report rep;
  rep.say("correlating device induced by the protocol:");
  for (const auto& e : d.entries) {
    rep.say("  " + profile_label(inst.game, e.profile) + "  p = " + num(e.probability));
  }
  rep.machine = json::parse(serialized);
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_check_state(const Options& opt, const std::string& state_path) {
  quantum::QuantumState s = io::parse_state(io::read_file(state_path));
  quantum::ConstraintReport r = quantum::appendix_d_report(s);
  Report rep;
  describe_constraints(rep, r, opt.eps);
  rep.emit(opt);
  return r.passes(opt.eps) ? kExitPass : kExitFail;
}

int cmd_qce_search(const Options& opt, int row_qubits, int col_qubits) {
  quantum::SearchResult r = quantum::infeasibility_search(row_qubits, col_qubits, opt.restarts,
                                                          opt.seed);
  Report rep;
  rep.say("minimum summed squared residual over " + std::to_string(opt.restarts) +
          " restarts: " + num(r.min_residual));
  rep.say("trace of CC-dagger at the best state: " + num(r.trace_value) +
          " (gram-chain bound " + num(r.trace_bound) + ", holds: " +
          (r.bound_holds ? "yes" : "no") + ")");
  describe_constraints(rep, r.best_report, opt.eps);
  rep.machine["min_residual"] = r.min_residual;
  rep.machine["trace_value"] = r.trace_value;
  rep.machine["trace_bound"] = r.trace_bound;
  rep.machine["bound_holds"] = r.bound_holds;
  rep.machine["best_state"] = json::parse(io::serialize_state(r.best_state));
  rep.machine["best_report"] = constraint_json(r.best_report, opt.eps);
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_simulate_extensive(const Options& opt, const std::string& state_path,
                               const std::string& game_path, const std::string& programs_path) {
  quantum::ExtensiveQceInstance inst =
      build_extensive_instance(state_path, game_path, programs_path, opt);
  quantum::ExtensiveSimResult r = quantum::simulate_extensive_qce(inst, opt.max_qubits);
  Report rep;
  rep.say("leaf distribution:");
  for (const auto& [leaf, p] : r.distribution.entries) {
    rep.say("  leaf " + std::to_string(leaf[0]) + "  p = " + num(p));
  }
  for (int i = 0; i < inst.game.players; ++i) {
    rep.say("utility of " + inst.game.player_name(i) + ": " + num(r.utilities[i]));
  }
  for (const auto& w : r.warnings) rep.say("warning: " + w);
  rep.machine = distribution_json(r.distribution, nullptr);
  rep.machine["utilities"] = r.utilities;
  rep.machine["warnings"] = r.warnings;
  rep.emit(opt);
  return kExitPass;
}

int cmd_qce_lookahead(const Options& opt, const std::string& state_path,
                      const std::string& game_path, const std::string& programs_path, int player) {
  quantum::ExtensiveQceInstance inst =
      build_extensive_instance(state_path, game_path, programs_path, opt);
  quantum::LookaheadResult r = quantum::lookahead_deviation_value(inst, player, opt.eps);
  Report rep;
  rep.say("lookahead deviation value for " + inst.game.player_name(player) + ": " + num(r.value) +
          " (on-path " + num(r.on_path) + ", gain " + num(r.gain) + ")");
  if (!r.evaluated_early.empty()) {
    std::string sets;
    for (const auto& s : r.evaluated_early) sets += (sets.empty() ? "" : ", ") + s;
    rep.say("  evaluates early: " + sets);
  }
  for (const auto& line : r.plan) rep.say("  " + line);
  rep.machine["player"] = player;
  rep.machine["value"] = r.value;
  rep.machine["on_path"] = r.on_path;
  rep.machine["gain"] = r.gain;
  rep.machine["evaluated_early"] = r.evaluated_early;
  rep.machine["plan"] = r.plan;
  rep.emit(opt);
  return r.gain > opt.eps ? kExitFail : kExitPass;
}

int cmd_ghz_simulate(const Options& opt, const std::string& mode) {
  Report rep;
  if (mode == "quantum") {
    scenarios::GhzQuantumResult r = scenarios::ghz_quantum_win_probabilities();
    bool all_win = true;
    json branches = json::array();
    for (size_t k = 0; k < r.inputs.size(); ++k) {
      rep.say("input " + r.inputs[k] + ": win probability " + num(r.win_probability[k]));
      branches.push_back({{"input", r.inputs[k]}, {"win_probability", r.win_probability[k]}});
      if (std::abs(r.win_probability[k] - 1.0) > 1e-12) all_win = false;
    }
    rep.say(all_win ? "the entangled protocol wins every branch"
                    : "the entangled protocol does not win every branch");
    rep.machine["mode"] = "quantum";
    rep.machine["branches"] = std::move(branches);
    rep.machine["always_wins"] = all_win;
    rep.emit(opt);
    return all_win ? kExitPass : kExitFail;
  }
  if (mode == "classical") {
    scenarios::GhzClassicalResult r = scenarios::ghz_classical_brute_force();
    rep.say("deterministic profiles: " + std::to_string(r.profile_count));
    rep.say("max win probability against the uniform input mix: " + num(r.max_win_probability));
    rep.say(std::string("every profile defeated by some input: ") +
            (r.every_profile_defeated ? "yes" : "no"));
    rep.say("worst-case best response of the input chooser: " + num(r.min_best_response));
    rep.machine["mode"] = "classical";
    rep.machine["profile_count"] = r.profile_count;
    rep.machine["max_win_probability"] = r.max_win_probability;
    rep.machine["every_profile_defeated"] = r.every_profile_defeated;
    rep.machine["min_best_response"] = r.min_best_response;
    rep.emit(opt);
    return kExitPass;
  }
  throw InputError("unknown mode '" + mode + "' (use quantum or classical)");
}

int cmd_scenario_list(const Options& opt) {
  Report rep;
  json list = json::array();
  for (const auto& name : scenarios::list_scenarios()) {
    rep.say(name);
    list.push_back(name);
  }
  rep.machine["scenarios"] = std::move(list);
  rep.emit(opt);
  return kExitPass;
}

int cmd_scenario_run(const Options& opt, std::vector<std::string> names, bool all) {
  if (all) names = scenarios::list_scenarios();
  if (names.empty()) throw InputError("name a scenario or pass --all");
  scenarios::RunOptions ropt;
  ropt.eps = opt.eps;
  ropt.seed = opt.seed;
  ropt.restarts = opt.restarts;

  Report rep;
  json runs = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    scenarios::ScenarioReport r = scenarios::run_scenario(name, ropt);
    all_pass = all_pass && r.pass;
    rep.say(std::string(r.pass ? "PASS" : "FAIL") + "  " + r.scenario);
    json checks = json::array();
    for (const auto& c : r.checks) {
      rep.say(std::string("  ") + (c.pass ? "ok   " : "FAIL ") + c.name + ": " + num(c.value) +
              " (expected " + num(c.expected) +
              (c.tolerance > 0 ? ", tol " + num(c.tolerance) : "") + ")");
      checks.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"value", c.value},
                        {"expected", c.expected},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    }
    runs.push_back({{"scenario", r.scenario}, {"pass", r.pass}, {"checks", std::move(checks)}});
  }
  rep.machine["scenarios"] = std::move(runs);
  rep.machine["pass"] = all_pass;
  rep.emit(opt);
  return all_pass ? kExitPass : kExitFail;
}

int cmd_scenario_export(const Options& opt, const std::vector<std::string>& names, bool all,
                        const std::string& dir) {
  std::vector<std::string> list = all ? scenarios::list_scenarios() : names;
  if (list.empty()) throw InputError("name a scenario or pass --all");
  Report rep;
  json files = json::array();
  for (const auto& name : list) {
    for (const auto& file : scenarios::export_scenario(name, dir)) {
      rep.say(dir + "/" + file);
      files.push_back(dir + "/" + file);
    }
  }
  rep.machine["written"] = std::move(files);
  rep.emit(opt);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis of classical and quantum correlated equilibria in small games"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--eps", opt.eps, "incentive tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized procedures")->capture_default_str();
  app.add_option("--restarts", opt.restarts, "restart budget for searches")->capture_default_str();
  app.add_option("--max-qubits", opt.max_qubits, "largest simulable state")->capture_default_str();
  app.add_option("--format", opt.format, "output format: human or machine")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "also write the primary artifact to this file");

  std::string game_path, device_path, state_path, circuits_path, programs_path;
  std::string objective, mode = "quantum", out_state, out_circuits, dir = ".";
  std::vector<std::string> names;
  bool all = false;
  int player = 0, row_qubits = 1, col_qubits = 1;

  auto* ce = app.add_subcommand("ce", "classical correlated equilibria");
  ce->require_subcommand(1);
  auto* ce_verify = ce->add_subcommand("verify", "check a device against a normal-form game");
  ce_verify->add_option("game", game_path)->required();
  ce_verify->add_option("device", device_path)->required();
  auto* ce_find = ce->add_subcommand("find", "solve the correlated-equilibrium program");
  ce_find->add_option("game", game_path)->required();
  ce_find->add_option("--objective", objective, "welfare or player:<index>");

  auto* efce = app.add_subcommand("efce", "extensive-form correlated equilibria");
  efce->require_subcommand(1);
  auto* efce_verify = efce->add_subcommand("verify", "reveal-on-arrival check");
  efce_verify->add_option("game", game_path)->required();
  efce_verify->add_option("device", device_path)->required();

  auto* ir = app.add_subcommand("ir-efce", "immediate-revelation equilibria");
  ir->require_subcommand(1);
  auto* ir_verify = ir->add_subcommand("verify", "blow up to the normal form and check there");
  ir_verify->add_option("game", game_path)->required();
  ir_verify->add_option("device", device_path)->required();

  auto* tnf = app.add_subcommand("to-normal-form", "normal-form equivalent of a game tree");
  tnf->add_option("game", game_path)->required();

  auto* qce = app.add_subcommand("qce", "entanglement-advice protocols");
  qce->require_subcommand(1);
  auto* q_sim = qce->add_subcommand("simulate", "exact outcome distribution of a protocol");
  q_sim->add_option("state", state_path)->required();
  q_sim->add_option("game", game_path)->required();
  q_sim->add_option("--circuits", circuits_path, "default: bare measurements");
  auto* q_canon = qce->add_subcommand("canonicalize", "defer measurements into the state");
  q_canon->add_option("state", state_path)->required();
  q_canon->add_option("game", game_path)->required();
  q_canon->add_option("--circuits", circuits_path)->required();
  q_canon->add_option("--out-state", out_state);
  q_canon->add_option("--out-circuits", out_circuits);
  auto* q_verify = qce->add_subcommand("verify", "optimal-deviation equilibrium check");
  q_verify->add_option("state", state_path)->required();
  q_verify->add_option("game", game_path)->required();
  q_verify->add_option("--circuits", circuits_path, "default: bare measurements");
  auto* q_toce = qce->add_subcommand("to-ce", "classical device induced by the protocol");
  q_toce->add_option("state", state_path)->required();
  q_toce->add_option("game", game_path)->required();
  q_toce->add_option("--circuits", circuits_path);
  auto* q_check = qce->add_subcommand("check-state", "block-constraint report for a state");
  q_check->add_option("state", state_path)->required();
  auto* q_search = qce->add_subcommand("search", "residual floor over random states");
  q_search->add_option("--row-qubits", row_qubits)->capture_default_str();
  q_search->add_option("--col-qubits", col_qubits)->capture_default_str();
  auto* q_sime = qce->add_subcommand("simulate-extensive", "walk a game tree with a protocol");
  q_sime->add_option("state", state_path)->required();
  q_sime->add_option("game", game_path)->required();
  q_sime->add_option("programs", programs_path)->required();
  auto* q_look = qce->add_subcommand("lookahead", "early-evaluation deviation value");
  q_look->add_option("state", state_path)->required();
  q_look->add_option("game", game_path)->required();
  q_look->add_option("programs", programs_path)->required();
  q_look->add_option("--player", player)->required();

  auto* ghz = app.add_subcommand("ghz", "three-player parity coordination game");
  ghz->require_subcommand(1);
  auto* ghz_sim = ghz->add_subcommand("simulate", "entangled protocol or classical brute force");
  ghz_sim->add_option("--mode", mode, "quantum or classical")->capture_default_str();

  auto* scen = app.add_subcommand("scenario", "bundled examples with expected verdicts");
  scen->require_subcommand(1);
  auto* s_list = scen->add_subcommand("list", "names of the bundled scenarios");
  auto* s_run = scen->add_subcommand("run", "run scenarios and compare against expectations");
  s_run->add_option("names", names);
  s_run->add_flag("--all", all);
  auto* s_export = scen->add_subcommand("export", "write scenario payload files");
  s_export->add_option("names", names);
  s_export->add_flag("--all", all);
  s_export->add_option("--dir", dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (ce_verify->parsed()) return cmd_ce_verify(opt, game_path, device_path);
    if (ce_find->parsed()) return cmd_ce_find(opt, game_path, objective);
    if (efce_verify->parsed()) return cmd_efce_verify(opt, game_path, device_path, false);
    if (ir_verify->parsed()) return cmd_efce_verify(opt, game_path, device_path, true);
    if (tnf->parsed()) return cmd_to_normal_form(opt, game_path);
    if (q_sim->parsed()) return cmd_qce_simulate(opt, state_path, game_path, circuits_path);
    if (q_canon->parsed()) {
      return cmd_qce_canonicalize(opt, state_path, game_path, circuits_path, out_state,
                                  out_circuits);
    }
    if (q_verify->parsed()) return cmd_qce_verify(opt, state_path, game_path, circuits_path);
    if (q_toce->parsed()) return cmd_qce_to_ce(opt, state_path, game_path, circuits_path);
    if (q_check->parsed()) return cmd_qce_check_state(opt, state_path);
    if (q_search->parsed()) return cmd_qce_search(opt, row_qubits, col_qubits);
    if (q_sime->parsed()) {
      return cmd_qce_simulate_extensive(opt, state_path, game_path, programs_path);
    }
    if (q_look->parsed()) {
      return cmd_qce_lookahead(opt, state_path, game_path, programs_path, player);
    }
    if (ghz_sim->parsed()) return cmd_ghz_simulate(opt, mode);
    if (s_list->parsed()) return cmd_scenario_list(opt);
    if (s_run->parsed()) return cmd_scenario_run(opt, names, all);
    if (s_export->parsed()) return cmd_scenario_export(opt, names, all, dir);
    throw InputError("no command selected");
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitPass;
}
