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
// File formats. Everything is JSON; numbers are written with enough digits
// to round-trip doubles exactly, complex numbers as [re, im] pairs.
//
//   game (normal form):    {"type":"normal_form","players":N,"actions":[[..]],
//                           "payoffs":[[u1..uN], ...]}   (row-major cells)
//   game (extensive form): {"type":"extensive_form","players":N,"root":id,
//                           "nodes":[{"id":..,"kind":"internal","owner":..,
//                                     "infoset":..,"edges":[["action",child]..]}
//                                    |{"id":..,"kind":"leaf","payoffs":[..]}]}
//   state:    {"type":"state","qubits":n,"partition":[player per qubit],
//              "amplitudes":[[re,im] x 2^n]}
//   circuits: {"type":"circuits","circuits":[{"owner":i,"ancillas":k,
//              "gates":[{"gate":"H","targets":[q]}|{"gate":"unitary",
//              "targets":[..],"matrix":[[[re,im]..]..]}],
//              "outputs":[q..],"actions":{"bits":"label"}}]}
//   programs: {"type":"programs","programs":[{"infoset":id,"circuit":{..}}
//                                            |{"infoset":id,"mix":{"a":p}}]}
//   device:   {"type":"device","entries":[{"profile":["a1",..,"aN"],
//              "probability":p}]}
//   extensive device: {"type":"extensive_device","entries":[
//              {"profile":[{"infoset":"action",..} per player],"probability":p}]}

#ifndef CORRQ_IO_HPP_
#define CORRQ_IO_HPP_

#include <string>
#include <variant>
#include <vector>

#include "corrq/classical.hpp"
#include "corrq/games.hpp"
#include "corrq/quantum.hpp"

namespace corrq::io {

// Parse errors throw InputError naming the offending field.
games::NormalFormGame parse_normal_form(const std::string& text);
games::ExtensiveFormGame parse_extensive_form(const std::string& text);
// Either kind, keyed by the "type" field.
std::variant<games::NormalFormGame, games::ExtensiveFormGame> parse_game(const std::string& text);

quantum::QuantumState parse_state(const std::string& text);
std::vector<quantum::PlayerCircuit> parse_circuits(const std::string& text);
std::vector<quantum::InfosetProgram> parse_programs(const std::string& text);
classical::CorrelatingDevice parse_device(const games::NormalFormGame& g, const std::string& text);
classical::ExtensiveDevice parse_extensive_device(const games::ExtensiveFormGame& g,
                                                  const std::string& text);

std::string serialize_normal_form(const games::NormalFormGame& g);
std::string serialize_extensive_form(const games::ExtensiveFormGame& g);
std::string serialize_state(const quantum::QuantumState& s);
std::string serialize_circuits(const std::vector<quantum::PlayerCircuit>& circuits);
std::string serialize_programs(const std::vector<quantum::InfosetProgram>& programs);
std::string serialize_device(const games::NormalFormGame& g,
                             const classical::CorrelatingDevice& d);
std::string serialize_extensive_device(const games::ExtensiveFormGame& g,
                                       const classical::ExtensiveDevice& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

template <typename T>
T load(T (*parse)(const std::string&), const std::string& path) {
  return parse(read_file(path));
}

}  // namespace corrq::io

#endif  // CORRQ_IO_HPP_
