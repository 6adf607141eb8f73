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

#include <cmath>

#include "corrq/quantum.hpp"
#include "corrq/scenarios.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corrq;
using namespace corrq::quantum;

TEST_CASE("the entangled trio wins every branch of the coordination game") {
  ExtensiveSimResult r = simulate_extensive_qce(scenarios::cghz_quantum_protocol());
  CHECK(r.utilities[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.utilities[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.utilities[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.utilities[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.warnings.empty());
}

TEST_CASE("constant-action circuits walk the deterministic path") {
  quantum::ExtensiveQceInstance inst;
  inst.game = scenarios::fig3_game();
  inst.state = scenarios::bell_state({0, 1});
  PlayerCircuit out_circuit;
  out_circuit.owner = 0;
  out_circuit.action_map = {{"", "OUT"}};
  InfosetProgram root;
  root.infoset = "1.root";
  root.circuit = out_circuit;
  inst.programs = {root};
  ExtensiveSimResult r = simulate_extensive_qce(inst);
  REQUIRE(r.distribution.entries.size() == 1);
  CHECK(r.distribution.probability({1}) == doctest::Approx(1.0));  // the OUT leaf
  CHECK(r.utilities[0] == doctest::Approx(3.0));
}

TEST_CASE("a missing program is reported when its set is reached") {
  quantum::ExtensiveQceInstance inst = scenarios::fig3_quantum_attempt();
  inst.programs.pop_back();  // drop the program for the second move set
  CHECK_THROWS_AS(simulate_extensive_qce(inst), InputError);
}

TEST_CASE("the composite protocol reproduces its target distribution") {
  ExtensiveSimResult r = simulate_extensive_qce(scenarios::appf_quantum_protocol());
  games::OutcomeDistribution target =
      scenarios::appf_device().outcome_distribution(scenarios::appf_game());
  for (const auto& [leaf, p] : target.entries) {
    CHECK(r.distribution.probability(leaf) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(r.utilities[0] == doctest::Approx(51.0).epsilon(1e-12));
  CHECK(r.utilities[1] == doctest::Approx(51.0).epsilon(1e-12));
}

TEST_CASE("re-measuring an output qubit is flagged") {
  quantum::ExtensiveQceInstance inst = scenarios::fig3_quantum_attempt();
  // The root now measures the advice qubit too (and ignores the result),
  // so the later move set touches an already-measured qubit.
  PlayerCircuit peek;
  peek.owner = 0;
  peek.output_qubits = {0};
  peek.action_map = {{"0", "IN"}, {"1", "IN"}};
  inst.programs[0].mix.reset();
  inst.programs[0].circuit = peek;
  ExtensiveSimResult r = simulate_extensive_qce(inst);
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings.front().find("already measured") != std::string::npos);
}

TEST_CASE("early evaluation finds the profitable exit") {
  LookaheadResult r = lookahead_deviation_value(scenarios::fig3_quantum_attempt(), 0);
  CHECK(r.on_path == doctest::Approx(51.0).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(51.5).epsilon(1e-9));
  CHECK(r.gain == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(r.evaluated_early.size() == 1);
  CHECK(r.evaluated_early[0] == "1.move");
}

TEST_CASE("one information set means lookahead is just the best response map") {
  // Player 2 moves once; any deviation is a function of his own measurement.
  LookaheadResult r = lookahead_deviation_value(scenarios::fig3_quantum_attempt(), 1);
  CHECK(r.on_path == doctest::Approx(51.0).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(51.0).epsilon(1e-9));
  CHECK(r.gain <= 1e-9);
}

TEST_CASE("the composite protocol resists early evaluation") {
  quantum::ExtensiveQceInstance inst = scenarios::appf_quantum_protocol();
  for (int player = 0; player < 5; ++player) {
    LookaheadResult r = lookahead_deviation_value(inst, player);
    CHECK(r.gain <= 1e-9);
  }
  // P1 in particular: exiting after peeking still loses, since the trio
  // wins the coordination game without him.
  LookaheadResult p1 = lookahead_deviation_value(inst, 0);
  CHECK(p1.value == doctest::Approx(51.0).epsilon(1e-9));
}

TEST_CASE("the trio cannot gain by early evaluation either") {
  quantum::ExtensiveQceInstance inst = scenarios::cghz_quantum_protocol();
  for (int player = 0; player < 4; ++player) {
    LookaheadResult r = lookahead_deviation_value(inst, player);
    CHECK(r.gain <= 1e-9);
  }
}

TEST_CASE("programs are validated") {
  quantum::ExtensiveQceInstance inst = scenarios::fig3_quantum_attempt();
  SUBCASE("circuit owned by the wrong player") {
    inst.programs[2].circuit->owner = 1;
    CHECK_THROWS_AS(inst.validate(), InputError);
  }
  SUBCASE("mix over an unavailable action") {
    inst.programs[0].mix = {{{"NOPE", 1.0}}};
    CHECK_THROWS_AS(inst.validate(), InputError);
  }
  SUBCASE("mix must normalize") {
    inst.programs[0].mix = {{{"IN", 0.5}}};
    CHECK_THROWS_AS(inst.validate(), InputError);
  }
  SUBCASE("circuit touching another register") {
    inst.programs[2].circuit->gates.push_back({"H", {1}, {}});
    CHECK_THROWS_AS(inst.validate(), InputError);
  }
}
