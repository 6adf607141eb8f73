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

#include <random>

#include "corrq/io.hpp"
#include "corrq/scenarios.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corrq;
using namespace corrq::io;

TEST_CASE("normal-form games round-trip") {
  games::NormalFormGame g = scenarios::fig4_game();
  games::NormalFormGame back = parse_normal_form(serialize_normal_form(g));
  CHECK(back.players == g.players);
  CHECK(back.actions == g.actions);
  CHECK(back.payoffs == g.payoffs);
  CHECK(back.player_names == g.player_names);
}

TEST_CASE("extensive-form games round-trip") {
  for (const games::ExtensiveFormGame& g :
       {scenarios::fig3_game(), scenarios::cghz_game(), scenarios::appf_game()}) {
    games::ExtensiveFormGame back = parse_extensive_form(serialize_extensive_form(g));
    REQUIRE(back.nodes.size() == g.nodes.size());
    CHECK(back.root == g.root);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      CHECK(back.nodes[i].kind == g.nodes[i].kind);
      CHECK(back.nodes[i].owner == g.nodes[i].owner);
      CHECK(back.nodes[i].infoset == g.nodes[i].infoset);
      CHECK(back.nodes[i].edges == g.nodes[i].edges);
      CHECK(back.nodes[i].payoffs == g.nodes[i].payoffs);
    }
  }
}

TEST_CASE("states round-trip bit-exactly") {
  std::mt19937_64 rng(521);
  for (int trial = 0; trial < 20; ++trial) {
    quantum::QuantumState s;
    s.qubit_count = 1 + static_cast<int>(rng() % 4);
    for (int q = 0; q < s.qubit_count; ++q) s.partition.push_back(static_cast<int>(rng() % 2));
    s.amplitudes = corrq::testing::random_unit_amplitudes(rng, s.qubit_count);
    quantum::QuantumState back = parse_state(serialize_state(s));
    CHECK(back.qubit_count == s.qubit_count);
    CHECK(back.partition == s.partition);
    REQUIRE(back.amplitudes.size() == s.amplitudes.size());
    for (size_t i = 0; i < s.amplitudes.size(); ++i) {
      // Doubles must survive the decimal round trip without any drift.
      CHECK(back.amplitudes[i].real() == s.amplitudes[i].real());
      CHECK(back.amplitudes[i].imag() == s.amplitudes[i].imag());
    }
  }
}

TEST_CASE("circuits round-trip, explicit unitaries included") {
  std::vector<quantum::PlayerCircuit> circuits = scenarios::fig2_hadamard_instance().circuits;
  quantum::Gate explicit_gate;
  explicit_gate.name = "unitary";
  explicit_gate.targets = {0};
  explicit_gate.matrix = linalg::ComplexMatrix::from_rows(
      {{linalg::Complex(0, 1), 0}, {0, linalg::Complex(0, -1)}});
  circuits[1].gates.push_back(explicit_gate);
  circuits[1].ancilla_count = 2;

  auto back = parse_circuits(serialize_circuits(circuits));
  REQUIRE(back.size() == circuits.size());
  CHECK(back[0].gates.size() == 1);
  CHECK(back[0].gates[0].name == "H");
  CHECK(back[1].ancilla_count == 2);
  REQUIRE(back[1].gates.size() == 1);
  CHECK(back[1].gates[0].name == "unitary");
  CHECK(linalg::max_abs_diff(back[1].gates[0].matrix, explicit_gate.matrix) == 0.0);
  CHECK(back[0].action_map == circuits[0].action_map);
}

TEST_CASE("programs round-trip") {
  auto programs = scenarios::appf_quantum_protocol().programs;
  auto back = parse_programs(serialize_programs(programs));
  REQUIRE(back.size() == programs.size());
  for (size_t i = 0; i < programs.size(); ++i) {
    CHECK(back[i].infoset == programs[i].infoset);
    CHECK(back[i].circuit.has_value() == programs[i].circuit.has_value());
    CHECK(back[i].mix.has_value() == programs[i].mix.has_value());
    if (programs[i].circuit) {
      CHECK(back[i].circuit->output_qubits == programs[i].circuit->output_qubits);
      CHECK(back[i].circuit->action_map == programs[i].circuit->action_map);
    }
    if (programs[i].mix) {
      double total = 0.0;
      for (const auto& [action, p] : *back[i].mix) total += p;
      CHECK(total == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("devices round-trip") {
  games::NormalFormGame g = scenarios::fig2_game();
  classical::CorrelatingDevice d = scenarios::one_third_device();
  classical::CorrelatingDevice back = parse_device(g, serialize_device(g, d));
  REQUIRE(back.entries.size() == d.entries.size());
  for (size_t i = 0; i < d.entries.size(); ++i) {
    CHECK(back.entries[i].profile == d.entries[i].profile);
    CHECK(back.entries[i].probability == d.entries[i].probability);
  }

  games::ExtensiveFormGame tree = scenarios::appf_game();
  classical::ExtensiveDevice ed = scenarios::appf_device();
  classical::ExtensiveDevice eback = parse_extensive_device(tree, serialize_extensive_device(tree, ed));
  REQUIRE(eback.entries.size() == ed.entries.size());
  for (size_t i = 0; i < ed.entries.size(); ++i) {
    CHECK(eback.entries[i].probability == ed.entries[i].probability);
    for (int p = 0; p < tree.players; ++p) {
      CHECK(eback.entries[i].profile[p].choices == ed.entries[i].profile[p].choices);
    }
  }
}

TEST_CASE("malformed inputs are reported with context") {
  CHECK_THROWS_WITH_AS(parse_state("{"), doctest::Contains("malformed JSON"), InputError);
  CHECK_THROWS_WITH_AS(parse_state(R"({"type":"state","qubits":1})"),
                       doctest::Contains("partition"), InputError);
  CHECK_THROWS_WITH_AS(parse_normal_form(R"({"type":"state"})"),
                       doctest::Contains("normal_form"), InputError);
  // A state that is not normalized is rejected on load.
  CHECK_THROWS_AS(parse_state(R"({"type":"state","qubits":1,"partition":[0],
                                  "amplitudes":[[1,0],[1,0]]})"),
                  InputError);
  // Device probabilities must sum to one.
  games::NormalFormGame g = scenarios::fig2_game();
  CHECK_THROWS_AS(parse_device(g, R"({"type":"device","entries":[
      {"profile":["T","R"],"probability":0.9}]})"),
                  InputError);
  // Unknown action labels are named in the error.
  CHECK_THROWS_WITH_AS(parse_device(g, R"({"type":"device","entries":[
      {"profile":["T","NOPE"],"probability":1.0}]})"),
                       doctest::Contains("NOPE"), InputError);
}

TEST_CASE("reading a missing file fails cleanly") {
  CHECK_THROWS_AS(read_file("/nonexistent/corrq-test-file"), InputError);
}
