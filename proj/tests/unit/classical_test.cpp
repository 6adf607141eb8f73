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
#include <random>

#include "corrq/classical.hpp"
#include "corrq/scenarios.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corrq;
using namespace corrq::classical;
using corrq::games::ExtensiveFormGame;
using corrq::games::NormalFormGame;
using corrq::games::PureStrategy;

namespace {

CorrelatingDevice uniform_device(const NormalFormGame& g) {
  CorrelatingDevice d;
  long long cells = g.cell_count();
  for (long long cell = 0; cell < cells; ++cell) {
    d.entries.push_back({g.profile_of_cell(cell), 1.0 / static_cast<double>(cells)});
  }
  return d;
}

// A 2x2 simultaneous-move game tree: player 0 at the root, player 1 in one
// information set spanning both children.
ExtensiveFormGame simultaneous_tree(const NormalFormGame& g) {
  ExtensiveFormGame t;
  t.players = 2;
  t.root = 0;
  games::TreeNode root;
  root.kind = games::TreeNode::Kind::internal;
  root.owner = 0;
  root.infoset = "p0";
  t.nodes.push_back(root);
  for (int a0 = 0; a0 < g.action_count(0); ++a0) {
    games::TreeNode mid;
    mid.kind = games::TreeNode::Kind::internal;
    mid.owner = 1;
    mid.infoset = "p1";
    int mid_id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(mid);
    t.nodes[0].edges.emplace_back(g.actions[0][a0], mid_id);
    for (int a1 = 0; a1 < g.action_count(1); ++a1) {
      games::TreeNode leaf;
      leaf.kind = games::TreeNode::Kind::leaf;
      leaf.payoffs = g.payoffs[static_cast<size_t>(g.cell_index({a0, a1}))];
      int leaf_id = static_cast<int>(t.nodes.size());
      t.nodes.push_back(leaf);
      t.nodes[mid_id].edges.emplace_back(g.actions[1][a1], leaf_id);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("the one-third device is an equilibrium of the asymmetric game") {
  EquilibriumReport r = verify_ce(scenarios::fig4_game(), scenarios::one_third_device(), 1e-9);
  CHECK(r.equilibrium);
  CHECK(r.max_gain() == doctest::Approx(0.0));
  CHECK(r.on_path[0] == doctest::Approx(17.0 / 3.0));
  CHECK(r.on_path[1] == doctest::Approx(17.0 / 3.0));
}

TEST_CASE("a mutual best response point mass is an equilibrium") {
  CorrelatingDevice d;
  d.entries = {{{0, 1}, 1.0}};  // (T, R)
  EquilibriumReport r = verify_ce(scenarios::fig4_game(), d, 1e-9);
  CHECK(r.equilibrium);
}

TEST_CASE("uniform advice on the symmetric game ties every response") {
  // Conditional on either advice the other action earns exactly the same
  // (3 vs 3), so the best-deviation gain is 0 and the device passes.
  EquilibriumReport r = verify_ce(scenarios::fig2_game(), uniform_device(scenarios::fig2_game()),
                                  1e-9);
  CHECK(r.max_gain() == doctest::Approx(0.0));
  CHECK(r.equilibrium);
}

TEST_CASE("uniform advice on the asymmetric game is rejected") {
  EquilibriumReport r = verify_ce(scenarios::fig1_game(), uniform_device(scenarios::fig1_game()),
                                  1e-9);
  CHECK_FALSE(r.equilibrium);
  // Advice T pays 0.25 but answering B pays 1.25; same for the column.
  CHECK(r.max_gain() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gains are invariant under relabeling and entry order") {
  NormalFormGame g = scenarios::fig1_game();
  CorrelatingDevice d = uniform_device(g);
  EquilibriumReport base = verify_ce(g, d, 1e-9);

  NormalFormGame relabeled = g;
  relabeled.actions = {{"up", "down"}, {"west", "east"}};
  CorrelatingDevice shuffled = d;
  std::reverse(shuffled.entries.begin(), shuffled.entries.end());
  EquilibriumReport other = verify_ce(relabeled, shuffled, 1e-9);
  for (int i = 0; i < g.players; ++i) CHECK(base.gains[i] == other.gains[i]);
}

TEST_CASE("welfare-optimal device concentrates on the paying cells") {
  NormalFormGame g = scenarios::fig1_game();
  CorrelatingDevice d = find_ce(g, social_welfare_objective(g));
  double welfare = 0.0;
  double support = 0.0;
  for (const auto& e : d.entries) {
    welfare += e.probability * (g.payoff(e.profile, 0) + g.payoff(e.profile, 1));
    if ((e.profile[0] == 0 && e.profile[1] == 1) || (e.profile[0] == 1 && e.profile[1] == 0)) {
      support += e.probability;
    }
  }
  CHECK(welfare == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(support == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("a one-cell game yields the point mass") {
  NormalFormGame g;
  g.players = 1;
  g.actions = {{"only"}};
  g.payoffs = {{0.0}};
  CorrelatingDevice d = find_ce(g);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0].probability == doctest::Approx(1.0));
}

TEST_CASE("row-utility objective reaches at least the known device value") {
  NormalFormGame g = scenarios::fig2_game();
  CorrelatingDevice d = find_ce(g, player_utility_objective(g, 0));
  double value = 0.0;
  for (const auto& e : d.entries) value += e.probability * g.payoff(e.profile, 0);
  CHECK(value >= 4.0 - 1e-8);
}

TEST_CASE("solver output always verifies") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    int players = 2 + static_cast<int>(rng() % 2);
    NormalFormGame g = corrq::testing::random_normal_game(rng, players);
    std::optional<CellObjective> obj;
    if (trial % 2 == 0) obj = social_welfare_objective(g);
    CorrelatingDevice d = find_ce(g, obj);
    EquilibriumReport r = verify_ce(g, d, 1e-6);
    CHECK(r.equilibrium);
  }
}

TEST_CASE("cell cap rejects oversized programs") {
  std::mt19937_64 rng(303);
  NormalFormGame g = corrq::testing::random_normal_game(rng, 2);
  CHECK_THROWS_AS(find_ce(g, std::nullopt, 2), InputError);
}

TEST_CASE("reveal-on-arrival advice keeps the two-stage device honest") {
  EquilibriumReport r = verify_efce(scenarios::fig3_game(), scenarios::fig3_device(), 1e-9);
  CHECK(r.equilibrium);
  CHECK(r.on_path[0] == doctest::Approx(51.0));
  CHECK(r.on_path[1] == doctest::Approx(51.0));
  CHECK(r.max_gain() == doctest::Approx(0.0));
}

TEST_CASE("immediate revelation breaks the same device") {
  EquilibriumReport r = verify_ir_efce(scenarios::fig3_game(), scenarios::fig3_device(), 1e-9);
  CHECK_FALSE(r.equilibrium);
  CHECK(r.gains[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.on_path[0] + r.gains[0] == doctest::Approx(51.5).epsilon(1e-9));
  CHECK(r.gains[1] == doctest::Approx(0.0));
}

TEST_CASE("a pointwise stable profile passes both extensive checks") {
  // Point mass on (IN.L, a): each player best-responds at every reached set.
  ExtensiveFormGame g = scenarios::fig3_game();
  PureStrategy in_l{0, {{"1.root", "IN"}, {"1.move", "L"}}};
  PureStrategy play_a{1, {{"2", "a"}}};
  ExtensiveDevice d;
  d.entries.push_back({{in_l, play_a}, 1.0});
  CHECK(verify_efce(g, d, 1e-9).equilibrium);
  CHECK(verify_ir_efce(g, d, 1e-9).equilibrium);
}

TEST_CASE("every corpus device passing immediate revelation also passes reveal-on-arrival") {
  ExtensiveFormGame fig3 = scenarios::fig3_game();
  PureStrategy in_l{0, {{"1.root", "IN"}, {"1.move", "L"}}};
  PureStrategy play_a{1, {{"2", "a"}}};
  ExtensiveDevice point;
  point.entries.push_back({{in_l, play_a}, 1.0});
  std::vector<std::pair<const ExtensiveFormGame*, const ExtensiveDevice*>> corpus;
  ExtensiveDevice fig3_half = scenarios::fig3_device();
  ExtensiveDevice appf = scenarios::appf_device();
  ExtensiveFormGame appf_g = scenarios::appf_game();
  corpus = {{&fig3, &point}, {&fig3, &fig3_half}, {&appf_g, &appf}};
  for (const auto& [game, device] : corpus) {
    if (verify_ir_efce(*game, *device, 1e-9).equilibrium) {
      CHECK(verify_efce(*game, *device, 1e-9).equilibrium);
    }
  }
}

TEST_CASE("the composite game splits the two revelation rules") {
  ExtensiveFormGame g = scenarios::appf_game();
  ExtensiveDevice d = scenarios::appf_device();
  EquilibriumReport efce = verify_efce(g, d, 1e-9);
  CHECK(efce.equilibrium);
  CHECK(efce.on_path[0] == doctest::Approx(51.0));
  EquilibriumReport ir = verify_ir_efce(g, d, 1e-9);
  CHECK_FALSE(ir.equilibrium);
  CHECK(ir.gains[0] >= 50.0 / 4.0 - 2.0);
}

TEST_CASE("one information set per player reduces to the one-shot check") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    NormalFormGame g = corrq::testing::random_normal_game(rng, 2, 2);
    ExtensiveFormGame tree = simultaneous_tree(g);
    REQUIRE(games::validate_extensive(tree).ok());

    // Random correlated device over action profiles, used on both sides.
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> weights(static_cast<size_t>(g.cell_count()));
    double total = 0.0;
    for (auto& w : weights) {
      w = u(rng);
      total += w;
    }
    CorrelatingDevice nf_device;
    ExtensiveDevice tree_device;
    for (long long cell = 0; cell < g.cell_count(); ++cell) {
      std::vector<int> profile = g.profile_of_cell(cell);
      double p = weights[static_cast<size_t>(cell)] / total;
      nf_device.entries.push_back({profile, p});
      PureStrategy s0{0, {{"p0", g.actions[0][profile[0]]}}};
      PureStrategy s1{1, {{"p1", g.actions[1][profile[1]]}}};
      tree_device.entries.push_back({{s0, s1}, p});
    }
    EquilibriumReport one_shot = verify_ce(g, nf_device, 1e-9);
    EquilibriumReport efce = verify_efce(tree, tree_device, 1e-9);
    EquilibriumReport ir = verify_ir_efce(tree, tree_device, 1e-9);
    for (int i = 0; i < 2; ++i) {
      CHECK(efce.gains[i] == doctest::Approx(one_shot.gains[i]).epsilon(1e-12));
      CHECK(ir.gains[i] == doctest::Approx(one_shot.gains[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("immediate revelation matches a direct strategy enumeration") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 12; ++trial) {
    ExtensiveFormGame g = corrq::testing::random_tree(rng, 2, 5);
    games::NormalFormConversion nf = games::to_normal_form(g);

    // Random device over a few full strategy profiles.
    std::uniform_real_distribution<double> u(0.1, 1.0);
    ExtensiveDevice device;
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      ExtensiveDeviceEntry e;
      for (int i = 0; i < 2; ++i) {
        e.profile.push_back(nf.strategies[i][rng() % nf.strategies[i].size()]);
      }
      e.probability = u(rng);
      total += e.probability;
      device.entries.push_back(std::move(e));
    }
    for (auto& e : device.entries) e.probability /= total;

    EquilibriumReport lib = verify_ir_efce(g, device, 1e-9);

    // Oracle: for every player and every recommended full strategy, the best
    // response over all pure strategies given the conditional opponents.
    for (int i = 0; i < 2; ++i) {
      std::map<std::map<std::string, std::string>, std::vector<const ExtensiveDeviceEntry*>>
          by_advice;
      for (const auto& e : device.entries) by_advice[e.profile[i].choices].push_back(&e);
      double gain = 0.0;
      for (const auto& [advice, entries] : by_advice) {
        double follow = 0.0;
        double best = -1e300;
        for (const PureStrategy& candidate : nf.strategies[i]) {
          double value = 0.0;
          for (const ExtensiveDeviceEntry* e : entries) {
            std::vector<PureStrategy> profile = e->profile;
            profile[i] = candidate;
            value += e->probability * corrq::testing::oracle_play(g, profile)[i];
          }
          best = std::max(best, value);
          if (candidate.choices == advice) follow = value;
        }
        gain += best - follow;
      }
      CHECK(lib.gains[i] == doctest::Approx(gain).epsilon(1e-9));
    }
  }
}

TEST_CASE("device validation rejects malformed devices") {
  NormalFormGame g = scenarios::fig2_game();
  CorrelatingDevice d;
  d.entries = {{{0, 1}, 0.7}, {{1, 0}, 0.7}};
  CHECK_THROWS_AS(d.validate(g), InputError);
  d.entries = {{{0, 5}, 1.0}};
  CHECK_THROWS_AS(d.validate(g), InputError);
  d.entries = {{{0}, 1.0}};
  CHECK_THROWS_AS(d.validate(g), InputError);
}
