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

#include "corrq/games.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace corrq::games {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

long long NormalFormGame::cell_count() const {
  long long n = 1;
  for (int i = 0; i < players; ++i) n *= action_count(i);
  return n;
}

long long NormalFormGame::cell_index(const std::vector<int>& profile) const {
  if (static_cast<int>(profile.size()) != players) {
    throw InputError("action profile length does not match player count");
  }
  long long ix = 0;
  for (int i = 0; i < players; ++i) {
    if (profile[i] < 0 || profile[i] >= action_count(i)) {
      throw InputError("action index out of range in profile");
    }
    ix = ix * action_count(i) + profile[i];
  }
  return ix;
}

std::vector<int> NormalFormGame::profile_of_cell(long long cell) const {
  std::vector<int> profile(players);
  for (int i = players - 1; i >= 0; --i) {
    profile[i] = static_cast<int>(cell % action_count(i));
    cell /= action_count(i);
  }
  return profile;
}

double NormalFormGame::payoff(const std::vector<int>& profile, int player) const {
  return payoffs[cell_index(profile)][player];
}

int NormalFormGame::action_index(int player, const std::string& label) const {
  const auto& list = actions[player];
  for (size_t i = 0; i < list.size(); ++i) {
    if (list[i] == label) return static_cast<int>(i);
  }
  throw InputError("unknown action label '" + label + "' for " + player_name(player));
}

std::string NormalFormGame::player_name(int player) const {
  if (player >= 0 && player < static_cast<int>(player_names.size()) &&
      !player_names[player].empty()) {
    return player_names[player];
  }
  return "player " + std::to_string(player);
}

void NormalFormGame::validate() const {
  if (players <= 0) throw InputError("game needs at least one player");
  if (static_cast<int>(actions.size()) != players) {
    throw InputError("action list count does not match player count");
  }
  for (int i = 0; i < players; ++i) {
    if (actions[i].empty()) throw InputError(player_name(i) + " has no actions");
    std::set<std::string> seen(actions[i].begin(), actions[i].end());
    if (static_cast<int>(seen.size()) != action_count(i)) {
      throw InputError("duplicate action label for " + player_name(i));
    }
  }
  if (static_cast<long long>(payoffs.size()) != cell_count()) {
    throw InputError("payoff tensor has wrong cell count");
  }
  for (const auto& cell : payoffs) {
    if (static_cast<int>(cell.size()) != players) {
      throw InputError("payoff cell does not list one payoff per player");
    }
    for (double u : cell) {
      if (!std::isfinite(u)) throw InputError("non-finite payoff");
    }
  }
}

const TreeNode& ExtensiveFormGame::node(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes.size())) {
    throw InputError("node id out of range: " + std::to_string(id));
  }
  return nodes[id];
}

std::string ExtensiveFormGame::player_name(int player) const {
  if (player >= 0 && player < static_cast<int>(player_names.size()) &&
      !player_names[player].empty()) {
    return player_names[player];
  }
  return "player " + std::to_string(player);
}

std::vector<std::pair<std::string, int>> ExtensiveFormGame::all_infosets() const {
  std::vector<std::pair<std::string, int>> out;
  std::set<std::string> seen;
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const TreeNode& n = node(id);
    if (n.is_leaf()) continue;
    if (seen.insert(n.infoset).second) out.emplace_back(n.infoset, n.owner);
    // Push children in reverse so the walk visits edges in declared order.
    for (auto it = n.edges.rbegin(); it != n.edges.rend(); ++it) stack.push_back(it->second);
  }
  return out;
}

std::vector<std::string> ExtensiveFormGame::infosets_of(int player) const {
  std::vector<std::string> out;
  for (const auto& [name, owner] : all_infosets()) {
    if (owner == player) out.push_back(name);
  }
  return out;
}

std::vector<std::string> ExtensiveFormGame::infoset_actions(const std::string& infoset) const {
  for (const TreeNode& n : nodes) {
    if (!n.is_leaf() && n.infoset == infoset) {
      std::vector<std::string> labels;
      labels.reserve(n.edges.size());
      for (const auto& [label, child] : n.edges) labels.push_back(label);
      return labels;
    }
  }
  throw InputError("unknown information set '" + infoset + "'");
}

int ExtensiveFormGame::infoset_owner(const std::string& infoset) const {
  for (const TreeNode& n : nodes) {
    if (!n.is_leaf() && n.infoset == infoset) return n.owner;
  }
  throw InputError("unknown information set '" + infoset + "'");
}

std::vector<int> ExtensiveFormGame::infoset_nodes(const std::string& infoset) const {
  std::vector<int> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf() && nodes[i].infoset == infoset) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> ExtensiveFormGame::leaf_ids() const {
  std::vector<int> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

// Sequence of (infoset, action) pairs of `player` along the root path to
// `target`, used for the perfect-recall check.
std::vector<std::pair<std::string, std::string>> own_history(
    const ExtensiveFormGame& g, const std::vector<int>& parent,
    const std::vector<std::string>& parent_action, int target, int player) {
  std::vector<std::pair<std::string, std::string>> rev;
  int cur = target;
  while (parent[cur] >= 0) {
    int up = parent[cur];
    const TreeNode& n = g.node(up);
    if (!n.is_leaf() && n.owner == player) rev.emplace_back(n.infoset, parent_action[cur]);
    cur = up;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

ValidationReport validate_extensive(const ExtensiveFormGame& g) {
  ValidationReport report;
  auto flag = [&](const std::string& what) { report.violations.push_back(what); };

  int count = static_cast<int>(g.nodes.size());
  if (g.players <= 0) flag("game needs at least one player");
  if (g.root < 0 || g.root >= count) {
    flag("root id out of range");
    return report;
  }

  // Structure of individual nodes.
  for (int id = 0; id < count; ++id) {
    const TreeNode& n = g.nodes[id];
    if (n.is_leaf()) {
      if (static_cast<int>(n.payoffs.size()) != g.players) {
        flag("leaf " + std::to_string(id) + " does not list one payoff per player");
      }
      for (double u : n.payoffs) {
        if (!std::isfinite(u)) flag("leaf " + std::to_string(id) + " has a non-finite payoff");
      }
    } else {
      if (n.owner < 0 || n.owner >= g.players) {
        flag("node " + std::to_string(id) + " has owner out of range");
      }
      if (n.infoset.empty()) flag("node " + std::to_string(id) + " has an empty information set id");
      if (n.edges.empty()) flag("internal node " + std::to_string(id) + " has no outgoing edges");
      std::set<std::string> labels;
      for (const auto& [label, child] : n.edges) {
        if (!labels.insert(label).second) {
          flag("node " + std::to_string(id) + " repeats action label '" + label + "'");
        }
        if (child < 0 || child >= count) {
          flag("node " + std::to_string(id) + " edge '" + label + "' points outside the tree");
        }
      }
    }
  }
  if (!report.ok()) return report;

  // Tree shape: every non-root node has exactly one parent, no node repeats,
  // everything is reachable from the root.
  std::vector<int> parent(count, -1);
  std::vector<std::string> parent_action(count);
  std::vector<int> indegree(count, 0);
  for (int id = 0; id < count; ++id) {
    const TreeNode& n = g.nodes[id];
    if (n.is_leaf()) continue;
    for (const auto& [label, child] : n.edges) {
      indegree[child]++;
      if (child == g.root) flag("root has an incoming edge");
      if (indegree[child] > 1) {
        flag("node " + std::to_string(child) + " has more than one parent");
      } else {
        parent[child] = id;
        parent_action[child] = label;
      }
    }
  }
  std::vector<bool> reachable(count, false);
  std::vector<int> stack = {g.root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (reachable[id]) {
      flag("cycle detected through node " + std::to_string(id));
      return report;
    }
    reachable[id] = true;
    const TreeNode& n = g.nodes[id];
    if (n.is_leaf()) continue;
    for (const auto& [label, child] : n.edges) {
      if (!reachable[child]) stack.push_back(child);
    }
  }
  for (int id = 0; id < count; ++id) {
    if (!reachable[id]) flag("node " + std::to_string(id) + " is unreachable from the root");
  }
  if (!report.ok()) return report;

  // Information-set consistency: one owner, identical action-label sets.
  std::map<std::string, std::vector<int>> sets;
  for (int id = 0; id < count; ++id) {
    if (!g.nodes[id].is_leaf()) sets[g.nodes[id].infoset].push_back(id);
  }
  for (const auto& [name, ids] : sets) {
    const TreeNode& first = g.nodes[ids.front()];
    std::set<std::string> first_labels;
    for (const auto& [label, child] : first.edges) first_labels.insert(label);
    for (int id : ids) {
      const TreeNode& n = g.nodes[id];
      if (n.owner != first.owner) {
        flag("information set '" + name + "' spans players " +
             g.player_name(first.owner) + " and " + g.player_name(n.owner));
      }
      std::set<std::string> labels;
      for (const auto& [label, child] : n.edges) labels.insert(label);
      if (labels != first_labels) {
        flag("information set '" + name + "' has differing action-label sets");
      }
    }
  }
  if (!report.ok()) return report;

  // Perfect recall: within an information set, all nodes see the same
  // sequence of (own information set, own action) pairs from the root.
  for (const auto& [name, ids] : sets) {
    int owner = g.nodes[ids.front()].owner;
    auto reference = own_history(g, parent, parent_action, ids.front(), owner);
    for (size_t i = 1; i < ids.size(); ++i) {
      if (own_history(g, parent, parent_action, ids[i], owner) != reference) {
        flag("information set '" + name + "' violates perfect recall");
        break;
      }
    }
  }
  return report;
}

const std::string& PureStrategy::choice(const std::string& infoset) const {
  auto it = choices.find(infoset);
  if (it == choices.end()) {
    throw InputError("strategy of player " + std::to_string(owner) +
                     " has no choice at information set '" + infoset + "'");
  }
  return it->second;
}

std::string PureStrategy::label(const std::vector<std::string>& infoset_order) const {
  std::vector<std::string> parts;
  parts.reserve(choices.size());
  for (const auto& infoset : infoset_order) parts.push_back(choice(infoset));
  return join(parts, ".");
}

std::vector<PureStrategy> enumerate_strategies(const ExtensiveFormGame& g, int player, int cap) {
  std::vector<std::string> infosets = g.infosets_of(player);
  std::vector<std::vector<std::string>> options;
  long long total = 1;
  for (const auto& name : infosets) {
    options.push_back(g.infoset_actions(name));
    total *= static_cast<long long>(options.back().size());
    if (total > cap) {
      throw InputError(g.player_name(player) + " has more than " + std::to_string(cap) +
                       " pure strategies; raise the cap to convert this game");
    }
  }
  std::vector<PureStrategy> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<size_t> pick(infosets.size(), 0);
  while (true) {
    PureStrategy s;
    s.owner = player;
    for (size_t i = 0; i < infosets.size(); ++i) s.choices[infosets[i]] = options[i][pick[i]];
    out.push_back(std::move(s));
    // Mixed-radix increment, last information set fastest.
    size_t i = infosets.size();
    while (i > 0) {
      --i;
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (infosets.empty()) return out;  // single empty strategy
  }
}

int play_profile(const ExtensiveFormGame& g, const std::vector<PureStrategy>& profile) {
  if (static_cast<int>(profile.size()) != g.players) {
    throw InputError("strategy profile length does not match player count");
  }
  int cur = g.root;
  int guard = static_cast<int>(g.nodes.size()) + 1;
  while (!g.node(cur).is_leaf()) {
    if (--guard < 0) throw InputError("play_profile: tree walk did not terminate (cycle?)");
    const TreeNode& n = g.node(cur);
    const std::string& action = profile[n.owner].choice(n.infoset);
    int next = -1;
    for (const auto& [label, child] : n.edges) {
      if (label == action) {
        next = child;
        break;
      }
    }
    if (next < 0) {
      throw InputError("strategy picks action '" + action + "' not available at information set '" +
                       n.infoset + "'");
    }
    cur = next;
  }
  return cur;
}

void OutcomeDistribution::validate(double tol) const {
  double total = 0.0;
  for (const auto& [key, p] : entries) {
    if (!(p >= -1e-12)) throw InputError("negative outcome probability");
    if (!std::isfinite(p)) throw InputError("non-finite outcome probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os << "outcome probabilities sum to " << total << ", not 1";
    throw InputError(os.str());
  }
}

double OutcomeDistribution::probability(const std::vector<int>& key) const {
  double total = 0.0;
  for (const auto& [k, p] : entries) {
    if (k == key) total += p;
  }
  return total;
}

void OutcomeDistribution::sort_keys() {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

NormalFormConversion to_normal_form(const ExtensiveFormGame& g, int cap) {
  ValidationReport report = validate_extensive(g);
  if (!report.ok()) {
    throw InputError("to_normal_form requires a valid game: " + join(report.violations, "; "));
  }

  NormalFormConversion out;
  out.game.players = g.players;
  out.game.player_names = g.player_names;
  out.strategies.resize(g.players);
  out.game.actions.resize(g.players);
  for (int i = 0; i < g.players; ++i) {
    std::vector<std::string> order = g.infosets_of(i);
    out.strategies[i] = enumerate_strategies(g, i, cap);
    for (const PureStrategy& s : out.strategies[i]) {
      out.game.actions[i].push_back(order.empty() ? "-" : s.label(order));
    }
  }

  long long cells = out.game.cell_count();
  out.game.payoffs.resize(static_cast<size_t>(cells));
  std::vector<PureStrategy> profile(g.players);
  for (long long cell = 0; cell < cells; ++cell) {
    std::vector<int> ix = out.game.profile_of_cell(cell);
    for (int i = 0; i < g.players; ++i) profile[i] = out.strategies[i][ix[i]];
    int leaf = play_profile(g, profile);
    out.game.payoffs[static_cast<size_t>(cell)] = g.node(leaf).payoffs;
  }
  return out;
}

bool corresponds(const ExtensiveFormGame& g, const OutcomeDistribution& d_ext,
                 const NormalFormConversion& nf, const OutcomeDistribution& d_nf, double tol) {
  if (d_ext.kind != OutcomeDistribution::Kind::leaf ||
      d_nf.kind != OutcomeDistribution::Kind::action_profile) {
    throw InputError("corresponds: expected a leaf distribution and a profile distribution");
  }
  d_ext.validate();
  d_nf.validate();

  std::map<int, double> pushed;
  for (const auto& [profile_ix, p] : d_nf.entries) {
    std::vector<PureStrategy> profile(g.players);
    for (int i = 0; i < g.players; ++i) {
      if (profile_ix[i] < 0 || profile_ix[i] >= static_cast<int>(nf.strategies[i].size())) {
        throw InputError("corresponds: profile indexes a missing strategy");
      }
      profile[i] = nf.strategies[i][profile_ix[i]];
    }
    pushed[play_profile(g, profile)] += p;
  }

  for (int leaf : g.leaf_ids()) {
    double lhs = d_ext.probability({leaf});
    auto it = pushed.find(leaf);
    double rhs = it == pushed.end() ? 0.0 : it->second;
    if (std::abs(lhs - rhs) > tol) return false;
  }
  return true;
}

}  // namespace corrq::games
