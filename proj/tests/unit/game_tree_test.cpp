#include <doctest.h>

#include <algorithm>
#include <random>

#include "nash/game_tree.hpp"
#include "support/games.hpp"
#include "support/random_games.hpp"

using nash::GameTree;
using nash::NodeId;
using nash::Owner;
using nash::Rational;

namespace {

NodeId child(const GameTree& t, NodeId n, std::size_t k) { return t.node(n).children.at(k); }

// Simultaneous version of the commitment game: player 2 does not see T/B.
GameTree simultaneous_tree() {
  GameTree t = fixtures::commitment_tree();
  const auto top = *t.node(child(t, t.root(), 0)).infoset;
  const auto bottom = *t.node(child(t, t.root(), 1)).infoset;
  t.merge_infosets(top, bottom);
  return t;
}

// Expected payoffs by walking the tree down from `n`.
nash::RationalVector walk(const GameTree& t, NodeId n, const std::vector<const nash::ReducedStrategy*>& profile) {
  const auto& node = t.node(n);
  if (node.children.empty()) return node.payoffs;
  nash::RationalVector out(2);
  if (node.owner.kind == nash::OwnerKind::Chance) {
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      const auto sub = walk(t, node.children[k], profile);
      for (std::size_t p = 0; p < 2; ++p) out[p] += node.chance_probs[k] * sub[p];
    }
    return out;
  }
  const std::size_t player = node.owner.player;
  const auto sets = t.infosets_of(player);
  const auto pos = static_cast<std::size_t>(std::find(sets.begin(), sets.end(), *node.infoset) - sets.begin());
  const auto choice = profile[player]->choices.at(pos);
  REQUIRE(choice.has_value());
  return walk(t, node.children[*choice], profile);
}

}  // namespace

TEST_CASE("starting tree and add_children") {
  GameTree t;
  CHECK(t.is_leaf(t.root()));
  t.add_children(t.root(), 2);
  CHECK(structurally_equal(t, GameTree::starting_tree()));
  CHECK(t.leaves().size() == 2);
  CHECK_THROWS_AS(t.add_children(t.root(), 2), nash::GameError);
  const NodeId extra = t.add_child(t.root());
  CHECK(t.leaves().back() == extra);
}

TEST_CASE("dissolving the simultaneous set gives the commitment tree") {
  GameTree t = simultaneous_tree();
  CHECK(t.infosets_of(1).size() == 1);
  CHECK(t.infoset(t.infosets_of(1)[0]).moves == std::vector<std::string>{"l", "r"});
  t.dissolve_infoset(t.infosets_of(1)[0]);
  const auto sets = t.infosets_of(1);
  REQUIRE(sets.size() == 2);
  CHECK(t.infoset(sets[0]).moves == std::vector<std::string>{"l", "r"});
  CHECK(t.infoset(sets[1]).moves == std::vector<std::string>{"a", "b"});
  CHECK(structurally_equal(t, fixtures::commitment_tree()));
}

TEST_CASE("cut_infoset splits members") {
  GameTree t = simultaneous_tree();
  const auto id = t.infosets_of(1)[0];
  const auto fresh = t.cut_infoset(id, 1);
  CHECK(t.infoset(id).members.size() == 1);
  CHECK(t.infoset(fresh).members.size() == 1);
  CHECK_THROWS(t.cut_infoset(id, 0));
}

TEST_CASE("merge preconditions") {
  GameTree t = fixtures::threat_tree();
  const auto p1 = t.infosets_of(0)[0];
  const auto p2 = t.infosets_of(1)[0];
  CHECK_THROWS_AS(t.merge_infosets(p1, p2), nash::GameError);
  CHECK_THROWS_AS(t.merge_infosets(p1, p1), nash::GameError);
}

TEST_CASE("chance probabilities") {
  GameTree t = GameTree::starting_tree();
  t.assign_owner(t.root(), Owner::chance());
  CHECK(t.node(t.root()).chance_probs == nash::RationalVector{Rational(1, 2), Rational(1, 2)});
  t.set_chance_prob(t.root(), 0, Rational(99, 100));
  CHECK(t.node(t.root()).chance_probs[1] == Rational(1, 100));
  CHECK(t.move_label(t.root(), 0) == "99/100");
  t.add_child(t.root());
  t.set_chance_prob(t.root(), 2, Rational(1, 2));
  CHECK(nash::sum(t.node(t.root()).chance_probs) == 1);
  CHECK_THROWS(t.set_chance_prob(t.root(), 0, Rational(3, 2)));
  CHECK_THROWS(t.set_chance_probs(t.root(), {Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("default payoffs run over the leaves") {
  GameTree t;
  t.default_payoffs();
  CHECK(t.node(t.root()).payoffs == nash::RationalVector{0, 0});
  t.add_children(t.root(), 2);
  t.assign_owner(t.root(), Owner::personal(0));
  for (NodeId c : t.node(t.root()).children) {
    t.add_children(c, 2);
    t.assign_owner(c, Owner::personal(1));
    for (NodeId g : t.node(c).children) {
      t.add_children(g, 2);
      t.assign_owner(g, Owner::chance());
    }
  }
  t.default_payoffs();
  const auto leaves = t.leaves();
  REQUIRE(leaves.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) CHECK(t.node(leaves[k]).payoffs[0] == Rational(static_cast<long>(k)));
  t.set_payoffs(0, {5, 3, 3, 5, 6, 4, 4, 6});
  CHECK(t.node(leaves[4]).payoffs[0] == 6);
  CHECK(t.node(leaves[4]).payoffs[1] == 4);
  CHECK_THROWS(t.set_payoffs(0, {1, 2}));
}

TEST_CASE("perfect recall") {
  const GameTree noisy = fixtures::noisy_commitment_tree();
  CHECK(noisy.check_perfect_recall(0));
  CHECK(noisy.check_perfect_recall(1));
  CHECK(fixtures::commitment_tree().check_perfect_recall(1));

  // Player 1 moves at the root and again below, both nodes in one set.
  GameTree absent;
  absent.add_children(absent.root(), 2);
  absent.assign_owner(absent.root(), Owner::personal(0));
  const NodeId below = child(absent, absent.root(), 0);
  absent.add_children(below, 2);
  absent.assign_owner(below, Owner::personal(0));
  absent.merge_infosets(*absent.node(absent.root()).infoset, *absent.node(below).infoset);
  CHECK(!absent.check_perfect_recall(0));

  // Player 2 forgets own earlier move.
  GameTree forget;
  forget.add_children(forget.root(), 2);
  forget.assign_owner(forget.root(), Owner::personal(1));
  for (NodeId c : forget.node(forget.root()).children) {
    forget.add_children(c, 2);
    forget.assign_owner(c, Owner::personal(1));
  }
  const auto s = forget.infosets_of(1);
  forget.merge_infosets(s[1], s[2]);
  CHECK(!forget.check_perfect_recall(1));
}

TEST_CASE("reduced strategies of the tree with a later own move") {
  const GameTree t = fixtures::fig13_tree();
  const auto r1 = t.reduced_strategies(0);
  const auto r2 = t.reduced_strategies(1);
  CHECK(r1.size() == 5);
  CHECK(r2.size() == 12);
  CHECK(t.full_strategy_count(0) == 8);
  CHECK(t.full_strategy_count(1) == 16);
  std::vector<std::string> names;
  for (const auto& r : r1) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"A*", "B*", "C*", "Dx", "Dy"});
  const auto sf = t.to_strategic_form();
  CHECK(sf.rows() == 5);
  CHECK(sf.cols() == 12);
}

TEST_CASE("perfect information player with one set") {
  const GameTree t = fixtures::threat_tree();
  const auto r = t.reduced_strategies(1);
  REQUIRE(r.size() == 2);
  CHECK(r[0].name == "l");
  CHECK(r[1].name == "r");
}

TEST_CASE("strategic form of the commitment trees") {
  CHECK(fixtures::commitment_tree().to_strategic_form() == fixtures::commitment_game());
  CHECK(fixtures::threat_tree().to_strategic_form() == fixtures::threat_game());

  const auto g = fixtures::noisy_commitment_tree().to_strategic_form();
  CHECK(g.col_names() == std::vector<std::string>{"la", "lb", "ra", "rb"});
  CHECK(g.a()[0] == nash::RationalVector{5, Rational(249, 50), Rational(151, 50), 3});
  CHECK(g.a()[1] == nash::RationalVector{6, Rational(201, 50), Rational(299, 50), 4});
  CHECK(g.b()[0] == nash::RationalVector{2, Rational(199, 100), Rational(101, 100), 1});
  CHECK(g.b()[1] == nash::RationalVector{3, Rational(399, 100), Rational(301, 100), 4});
}

TEST_CASE("single-move players give a 1x1 game") {
  GameTree t;
  t.add_children(t.root(), 1);
  t.assign_owner(t.root(), Owner::personal(0));
  const NodeId c = child(t, t.root(), 0);
  t.add_children(c, 1);
  t.assign_owner(c, Owner::personal(1));
  t.set_payoff(t.leaves()[0], 0, 7);
  t.set_payoff(t.leaves()[0], 1, -2);
  const auto g = t.to_strategic_form();
  CHECK(g.a() == nash::RationalMatrix{{7}});
  CHECK(g.b() == nash::RationalMatrix{{-2}});
}

TEST_CASE("incomplete and unsupported trees") {
  GameTree t = GameTree::starting_tree();
  CHECK_THROWS_AS(t.validate_complete(), nash::GameError);
  CHECK_THROWS_AS(t.to_strategic_form(), nash::GameError);
  GameTree three({"1", "2", "3"});
  three.add_children(three.root(), 2);
  three.assign_owner(three.root(), Owner::personal(2));
  CHECK_THROWS_AS(three.to_strategic_form(), nash::UnsupportedGame);
}

TEST_CASE("delete_subtree releases nodes and sets") {
  GameTree t = fixtures::commitment_tree();
  t.delete_subtree(child(t, t.root(), 1));
  CHECK(t.infosets_of(1).size() == 1);
  CHECK(t.node(t.root()).children.size() == 1);
  CHECK(t.leaves().size() == 2);
  t.delete_subtree(child(t, t.root(), 0));
  CHECK(t.infosets_of(1).empty());
  CHECK(t.leaves().size() == 1);
}

TEST_CASE("edit actions through apply") {
  GameTree t;
  t.apply(nash::AddChildren{t.root(), 3});
  t.apply(nash::AssignOwner{t.root(), Owner::personal(0)});
  t.apply(nash::SetMoveNames{0, {"X", "Y", "Z"}});
  t.apply(nash::SetPayoffs{1, {1, 2, 3}});
  CHECK(t.move_label(t.root(), 2) == "Z");
  CHECK(t.node(t.leaves()[1]).payoffs[1] == 2);
}

TEST_CASE("strategic form payoffs match direct expectation on random trees") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const GameTree t = gen::tree(rng);
    const auto g = t.to_strategic_form();
    const auto r1 = t.reduced_strategies(0);
    const auto r2 = t.reduced_strategies(1);
    REQUIRE(g.rows() == r1.size());
    REQUIRE(g.cols() == r2.size());
    CHECK(g.rows() <= t.full_strategy_count(0));
    for (std::size_t a = 0; a < r1.size(); ++a) {
      for (std::size_t b = 0; b < r2.size(); ++b) {
        const auto p = walk(t, t.root(), {&r1[a], &r2[b]});
        CHECK(p[0] == g.a()[a][b]);
        CHECK(p[1] == g.b()[a][b]);
        CHECK(t.expected_payoffs({&r1[a], &r2[b]}) == p);
      }
    }
  }
}
