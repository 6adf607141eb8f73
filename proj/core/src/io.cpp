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

#include "corrq/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace corrq::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

void expect_type(const json& j, const char* type) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  std::string t = field(j, "type").get<std::string>();
  if (t != type) {
    throw InputError(std::string("expected type '") + type + "', found '" + t + "'");
  }
}

linalg::Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw InputError("complex numbers are two-element arrays [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json dump_complex(const linalg::Complex& z) { return json::array({z.real(), z.imag()}); }

linalg::ComplexMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  linalg::ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw InputError("ragged matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

json dump_matrix(const linalg::ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(dump_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> parse_player_names(const json& j, int players) {
  std::vector<std::string> names;
  if (j.contains("player_names")) {
    names = j["player_names"].get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != players) {
      throw InputError("player_names must list one name per player");
    }
  }
  return names;
}

quantum::PlayerCircuit parse_circuit_object(const json& j) {
  quantum::PlayerCircuit c;
  c.owner = field(j, "owner").get<int>();
  c.ancilla_count = j.value("ancillas", 0);
  if (j.contains("gates")) {
    for (const json& gj : j["gates"]) {
      quantum::Gate g;
      g.name = field(gj, "gate").get<std::string>();
      g.targets = field(gj, "targets").get<std::vector<int>>();
      if (g.name == "unitary") g.matrix = parse_matrix(field(gj, "matrix"));
      c.gates.push_back(std::move(g));
    }
  }
  c.output_qubits = field(j, "outputs").get<std::vector<int>>();
  for (const auto& [bits, action] : field(j, "actions").items()) {
    c.action_map[bits] = action.get<std::string>();
  }
  return c;
}

json dump_circuit_object(const quantum::PlayerCircuit& c) {
  json j;
  j["owner"] = c.owner;
  j["ancillas"] = c.ancilla_count;
  json gates = json::array();
  for (const quantum::Gate& g : c.gates) {
    json gj;
    gj["gate"] = g.name;
    gj["targets"] = g.targets;
    if (g.name == "unitary") gj["matrix"] = dump_matrix(g.matrix);
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  j["outputs"] = c.output_qubits;
  json actions = json::object();
  for (const auto& [bits, action] : c.action_map) actions[bits] = action;
  j["actions"] = std::move(actions);
  return j;
}

}  // namespace

games::NormalFormGame parse_normal_form(const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "normal_form");
  games::NormalFormGame g;
  g.players = field(j, "players").get<int>();
  g.actions = field(j, "actions").get<std::vector<std::vector<std::string>>>();
  g.player_names = parse_player_names(j, g.players);
  for (const json& cell : field(j, "payoffs")) {
    g.payoffs.push_back(cell.get<std::vector<double>>());
  }
  g.validate();
  return g;
}

games::ExtensiveFormGame parse_extensive_form(const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "extensive_form");
  games::ExtensiveFormGame g;
  g.players = field(j, "players").get<int>();
  g.player_names = parse_player_names(j, g.players);
  g.root = field(j, "root").get<int>();
  const json& nodes = field(j, "nodes");
  g.nodes.resize(nodes.size());
  for (const json& nj : nodes) {
    int id = field(nj, "id").get<int>();
    if (id < 0 || id >= static_cast<int>(g.nodes.size())) {
      throw InputError("node id " + std::to_string(id) + " out of range (ids must be 0..count-1)");
    }
    games::TreeNode node;
    std::string kind = field(nj, "kind").get<std::string>();
    if (kind == "leaf") {
      node.kind = games::TreeNode::Kind::leaf;
      node.payoffs = field(nj, "payoffs").get<std::vector<double>>();
    } else if (kind == "internal") {
      node.kind = games::TreeNode::Kind::internal;
      node.owner = field(nj, "owner").get<int>();
      node.infoset = field(nj, "infoset").get<std::string>();
      for (const json& edge : field(nj, "edges")) {
        if (!edge.is_array() || edge.size() != 2) {
          throw InputError("edges must be [action, child] pairs");
        }
        node.edges.emplace_back(edge[0].get<std::string>(), edge[1].get<int>());
      }
    } else {
      throw InputError("node kind must be 'internal' or 'leaf', found '" + kind + "'");
    }
    g.nodes[id] = std::move(node);
  }
  games::ValidationReport report = games::validate_extensive(g);
  if (!report.ok()) throw InputError("invalid game file: " + report.violations.front());
  return g;
}

std::variant<games::NormalFormGame, games::ExtensiveFormGame> parse_game(const std::string& text) {
  json j = parse_json(text);
  std::string type = field(j, "type").get<std::string>();
  if (type == "normal_form") return parse_normal_form(text);
  if (type == "extensive_form") return parse_extensive_form(text);
  throw InputError("unknown game type '" + type + "'");
}

quantum::QuantumState parse_state(const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "state");
  quantum::QuantumState s;
  s.qubit_count = field(j, "qubits").get<int>();
  s.partition = field(j, "partition").get<std::vector<int>>();
  for (const json& a : field(j, "amplitudes")) s.amplitudes.push_back(parse_complex(a));
  int players = 0;
  for (int owner : s.partition) players = std::max(players, owner + 1);
  s.validate(std::max(players, 1));
  return s;
}

std::vector<quantum::PlayerCircuit> parse_circuits(const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "circuits");
  std::vector<quantum::PlayerCircuit> out;
  for (const json& cj : field(j, "circuits")) out.push_back(parse_circuit_object(cj));
  return out;
}

std::vector<quantum::InfosetProgram> parse_programs(const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "programs");
  std::vector<quantum::InfosetProgram> out;
  for (const json& pj : field(j, "programs")) {
    quantum::InfosetProgram prog;
    prog.infoset = field(pj, "infoset").get<std::string>();
    bool has_circuit = pj.contains("circuit");
    bool has_mix = pj.contains("mix");
    if (has_circuit == has_mix) {
      throw InputError("program for '" + prog.infoset +
                       "' needs exactly one of 'circuit' or 'mix'");
    }
    if (has_circuit) {
      prog.circuit = parse_circuit_object(pj["circuit"]);
    } else {
      std::vector<std::pair<std::string, double>> mix;
      for (const auto& [action, p] : pj["mix"].items()) mix.emplace_back(action, p.get<double>());
      prog.mix = std::move(mix);
    }
    out.push_back(std::move(prog));
  }
  return out;
}

classical::CorrelatingDevice parse_device(const games::NormalFormGame& g,
                                          const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "device");
  classical::CorrelatingDevice d;
  for (const json& ej : field(j, "entries")) {
    classical::DeviceEntry e;
    const json& profile = field(ej, "profile");
    if (static_cast<int>(profile.size()) != g.players) {
      throw InputError("device profile must name one action per player");
    }
    for (int i = 0; i < g.players; ++i) {
      e.profile.push_back(g.action_index(i, profile[i].get<std::string>()));
    }
    e.probability = field(ej, "probability").get<double>();
    d.entries.push_back(std::move(e));
  }
  d.validate(g);
  return d;
}

classical::ExtensiveDevice parse_extensive_device(const games::ExtensiveFormGame& g,
                                                  const std::string& text) {
  json j = parse_json(text);
  expect_type(j, "extensive_device");
  classical::ExtensiveDevice d;
  for (const json& ej : field(j, "entries")) {
    classical::ExtensiveDeviceEntry e;
    const json& profile = field(ej, "profile");
    if (static_cast<int>(profile.size()) != g.players) {
      throw InputError("device profile must hold one strategy per player");
    }
    for (int i = 0; i < g.players; ++i) {
      games::PureStrategy s;
      s.owner = i;
      for (const auto& [infoset, action] : profile[i].items()) {
        s.choices[infoset] = action.get<std::string>();
      }
      e.profile.push_back(std::move(s));
    }
    e.probability = field(ej, "probability").get<double>();
    d.entries.push_back(std::move(e));
  }
  d.validate(g);
  return d;
}

std::string serialize_normal_form(const games::NormalFormGame& g) {
  json j;
  j["type"] = "normal_form";
  j["players"] = g.players;
  if (!g.player_names.empty()) j["player_names"] = g.player_names;
  j["actions"] = g.actions;
  j["payoffs"] = g.payoffs;
  return j.dump(2) + "\n";
}

std::string serialize_extensive_form(const games::ExtensiveFormGame& g) {
  json j;
  j["type"] = "extensive_form";
  j["players"] = g.players;
  if (!g.player_names.empty()) j["player_names"] = g.player_names;
  j["root"] = g.root;
  json nodes = json::array();
  for (size_t id = 0; id < g.nodes.size(); ++id) {
    const games::TreeNode& n = g.nodes[id];
    json nj;
    nj["id"] = id;
    if (n.is_leaf()) {
      nj["kind"] = "leaf";
      nj["payoffs"] = n.payoffs;
    } else {
      nj["kind"] = "internal";
      nj["owner"] = n.owner;
      nj["infoset"] = n.infoset;
      json edges = json::array();
      for (const auto& [label, child] : n.edges) edges.push_back(json::array({label, child}));
      nj["edges"] = std::move(edges);
    }
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

std::string serialize_state(const quantum::QuantumState& s) {
  json j;
  j["type"] = "state";
  j["qubits"] = s.qubit_count;
  j["partition"] = s.partition;
  json amps = json::array();
  for (const auto& a : s.amplitudes) amps.push_back(dump_complex(a));
  j["amplitudes"] = std::move(amps);
  return j.dump(2) + "\n";
}

std::string serialize_circuits(const std::vector<quantum::PlayerCircuit>& circuits) {
  json j;
  j["type"] = "circuits";
  json list = json::array();
  for (const auto& c : circuits) list.push_back(dump_circuit_object(c));
  j["circuits"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string serialize_programs(const std::vector<quantum::InfosetProgram>& programs) {
  json j;
  j["type"] = "programs";
  json list = json::array();
  for (const auto& prog : programs) {
    json pj;
    pj["infoset"] = prog.infoset;
    if (prog.circuit) {
      pj["circuit"] = dump_circuit_object(*prog.circuit);
    } else if (prog.mix) {
      json mix = json::object();
      for (const auto& [action, p] : *prog.mix) mix[action] = p;
      pj["mix"] = std::move(mix);
    }
    list.push_back(std::move(pj));
  }
  j["programs"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string serialize_device(const games::NormalFormGame& g,
                             const classical::CorrelatingDevice& d) {
  json j;
  j["type"] = "device";
  json entries = json::array();
  for (const auto& e : d.entries) {
    json ej;
    json profile = json::array();
    for (int i = 0; i < g.players; ++i) profile.push_back(g.actions[i][e.profile[i]]);
    ej["profile"] = std::move(profile);
    ej["probability"] = e.probability;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string serialize_extensive_device(const games::ExtensiveFormGame& g,
                                       const classical::ExtensiveDevice& d) {
  json j;
  j["type"] = "extensive_device";
  json entries = json::array();
  for (const auto& e : d.entries) {
    json ej;
    json profile = json::array();
    for (const games::PureStrategy& s : e.profile) {
      json choices = json::object();
      for (const auto& [infoset, action] : s.choices) choices[infoset] = action;
      profile.push_back(std::move(choices));
    }
    ej["profile"] = std::move(profile);
    ej["probability"] = e.probability;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  (void)g;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace corrq::io
