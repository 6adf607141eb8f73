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
// Built-in corpus: the bundled games, advice states and protocols, each with
// its expected verdicts, plus the finite brute-force arguments for the GHZ
// coordination game.

#ifndef CORRQ_SCENARIOS_HPP_
#define CORRQ_SCENARIOS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "corrq/classical.hpp"
#include "corrq/games.hpp"
#include "corrq/quantum.hpp"

namespace corrq::scenarios {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  bool pass = false;
  std::vector<CheckResult> checks;
};

struct RunOptions {
  double eps = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 100;
};

std::vector<std::string> list_scenarios();
// InputError on unknown names.
ScenarioReport run_scenario(const std::string& name, const RunOptions& opt = {});
// Writes the scenario's payloads (game/state/circuits/device files) into
// `directory` so the CLI can consume them; returns the file names written.
std::vector<std::string> export_scenario(const std::string& name, const std::string& directory);

// 2x2 coordination games.
games::NormalFormGame fig1_game();  // payoffs 1/5 off-diagonal
games::NormalFormGame fig2_game();  // payoffs 6/6 off-diagonal
games::NormalFormGame fig4_game();  // payoffs 7/10 off-diagonal

games::ExtensiveFormGame fig3_game();
games::ExtensiveFormGame cghz_game();
games::ExtensiveFormGame appf_game();

quantum::QuantumState fig1_state();        // (|01> + |10>)/sqrt(2)
quantum::QuantumState fig2_naive_state();  // (|01> + |10> + |11>)/sqrt(3)
quantum::QuantumState appd1_state();       // the four-qubit attempt
quantum::QuantumState ghz_state(std::vector<int> partition);  // 1/2 (|000>-|011>-|101>-|110>)
quantum::QuantumState bell_state(std::vector<int> partition); // (|00> + |11>)/sqrt(2)
quantum::QuantumState appf_state();        // bell(P1,P2) x ghz(Alice,Bob,Charlie)

quantum::QceInstance fig1_instance();
quantum::QceInstance fig2_naive_instance();     // canonical measurements
quantum::QceInstance fig2_hadamard_instance();  // row player fronts a Hadamard
quantum::QceInstance appd1_instance();

classical::CorrelatingDevice one_third_device();  // 1/3 (TR + BL + BR)
classical::ExtensiveDevice fig3_device();         // 1/2 (IN.L, a) + 1/2 (IN.R, b)
classical::ExtensiveDevice appf_device();
classical::ExtensiveDevice cghz_point_device();   // all-zeros outputs, input 000

quantum::ExtensiveQceInstance fig3_quantum_attempt();
quantum::ExtensiveQceInstance cghz_quantum_protocol();
quantum::ExtensiveQceInstance appf_quantum_protocol();

struct GhzQuantumResult {
  std::array<std::string, 4> inputs;
  std::array<double, 4> win_probability;
};
// Runs the entangled protocol (Hadamard on input bit 1, then measure) on all
// four promise inputs; exact amplitude-level win probabilities.
GhzQuantumResult ghz_quantum_win_probabilities();

struct GhzClassicalResult {
  int profile_count = 0;           // 64 deterministic strategy triples
  double max_win_probability = 0;  // against the uniform input mix
  bool every_profile_defeated = false;
  double min_best_response = 0;    // worst case of the fourth player's best reply
};
GhzClassicalResult ghz_classical_brute_force();

}  // namespace corrq::scenarios

#endif  // CORRQ_SCENARIOS_HPP_
