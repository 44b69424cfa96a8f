#include <doctest.h>

#include <random>

#include "nash/cancel.hpp"
#include "nash/components.hpp"
#include "nash/path_follow.hpp"
#include "support/games.hpp"
#include "support/oracles.hpp"
#include "support/random_games.hpp"

using nash::Rational;
using nash::RationalVector;

namespace {

bool in_equilibrium_set(const nash::BimatrixGame& g, const nash::MixedEquilibrium& eq) {
  const auto eqs = nash::enumerate_extreme_equilibria(g);
  return oracle::in_some_clique(eq.x.probs, eq.y.probs, eqs, nash::connected_components(eqs));
}

}  // namespace

TEST_CASE("Lemke-Howson on the 2x2 example finds (B, r) from every label") {
  const auto g = fixtures::fig1_game();
  for (std::size_t label = 0; label < 4; ++label) {
    const auto eq = nash::lemke_howson(g, label);
    CHECK(eq.x.probs == RationalVector{0, 1});
    CHECK(eq.y.probs == RationalVector{0, 1});
    CHECK(eq.u == 4);
    CHECK(eq.v == 4);
  }
  CHECK_THROWS_AS(nash::lemke_howson(g, 4), nash::GameError);
}

TEST_CASE("1x1 game") {
  const nash::BimatrixGame g({{Rational(3)}}, {{Rational(-1, 2)}});
  const auto eq = nash::lemke_howson(g, 1);
  CHECK(eq.x.probs == RationalVector{1});
  CHECK(eq.y.probs == RationalVector{1});
  CHECK(eq.v == Rational(-1, 2));
  const auto lp = nash::lemke_prior(g, {1}, {1});
  CHECK(lp.u == 3);
}

TEST_CASE("Lemke-Howson on random 10x10 games") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3; ++i) {
    const auto g = gen::bimatrix(10, 10, rng);
    for (std::size_t label = 0; label < 20; ++label) {
      const auto eq = nash::lemke_howson(g, label);
      CHECK(g.is_equilibrium(eq.x, eq.y));
      CHECK(oracle::is_nash(g, eq.x.probs, eq.y.probs));
      CHECK(g.expected_payoffs(eq.x, eq.y) == std::pair(eq.u, eq.v));
    }
  }
}

TEST_CASE("Lemke-Howson on degenerate games lands in the equilibrium set") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 40; ++i) {
    const auto g = gen::degenerate_bimatrix(3, 4, rng);
    for (std::size_t label = 0; label < 7; ++label) {
      const auto eq = nash::lemke_howson(g, label);
      CHECK(oracle::is_nash(g, eq.x.probs, eq.y.probs));
      CHECK(in_equilibrium_set(g, eq));
    }
  }
}

TEST_CASE("Lemke with the uniform prior on the 2x2 example") {
  const auto g = fixtures::fig1_game();
  const RationalVector half{Rational(1, 2), Rational(1, 2)};
  const auto eq = nash::lemke_prior(g, half, half);
  CHECK(eq.x.probs == RationalVector{0, 1});
  CHECK(eq.y.probs == RationalVector{0, 1});
}

TEST_CASE("Lemke with random priors on the commitment game") {
  const auto g = fixtures::commitment_game();
  const auto eqs = nash::enumerate_extreme_equilibria(g);
  const auto comps = nash::connected_components(eqs);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto eq = nash::lemke_prior(g, nash::random_simplex_point(2, rng), nash::random_simplex_point(4, rng));
    CHECK(g.is_equilibrium(eq.x, eq.y));
    CHECK(oracle::in_some_clique(eq.x.probs, eq.y.probs, eqs, comps));
  }
}

TEST_CASE("Lemke with priors on random games") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = dim(rng);
    const std::size_t n = dim(rng);
    const auto g = i % 3 == 0 ? gen::degenerate_bimatrix(m, n, rng) : gen::bimatrix(m, n, rng);
    const auto eq = nash::lemke_prior(g, nash::random_simplex_point(m, rng), nash::random_simplex_point(n, rng));
    CHECK(oracle::is_nash(g, eq.x.probs, eq.y.probs));
    CHECK(g.expected_payoffs(eq.x, eq.y) == std::pair(eq.u, eq.v));
    // pure priors are allowed too
    RationalVector px(m);
    RationalVector py(n);
    px[m - 1] = 1;
    py[0] = 1;
    const auto pure = nash::lemke_prior(g, px, py);
    CHECK(oracle::is_nash(g, pure.x.probs, pure.y.probs));
  }
}

TEST_CASE("bad priors are rejected") {
  const auto g = fixtures::fig1_game();
  CHECK_THROWS_AS(nash::lemke_prior(g, {1}, {Rational(1, 2), Rational(1, 2)}), nash::GameError);
  CHECK_THROWS_AS(nash::lemke_prior(g, {Rational(1, 2), Rational(1, 3)}, {1, 0}), nash::GameError);
  CHECK_THROWS_AS(nash::lemke_prior(g, {2, -1}, {1, 0}), nash::GameError);
}

TEST_CASE("random simplex points") {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n < 8; ++n) {
    for (int i = 0; i < 50; ++i) {
      const auto p = nash::random_simplex_point(n, rng);
      REQUIRE(p.size() == n);
      CHECK(nash::sum(p) == 1);
      for (const auto& e : p) CHECK(e.sign() >= 0);
    }
  }
}

TEST_CASE("sequence form of the noisy tree with the uniform prior") {
  const auto t = fixtures::noisy_commitment_tree();
  const auto sf = nash::build_sequence_form(t);
  const auto x = nash::behavior_to_realization(t, sf.p1, nash::uniform_behavior(t, 0));
  const auto y = nash::behavior_to_realization(t, sf.p2, nash::uniform_behavior(t, 1));
  const auto eq = nash::lemke_prior(t, sf, x, y);
  CHECK(nash::is_feasible(sf.p1, eq.x));
  CHECK(nash::is_feasible(sf.p2, eq.y));
  const auto g = t.to_strategic_form();
  const nash::MixedStrategy mx{nash::Player::One, nash::behavior_to_mixed(t, eq.b1)};
  const nash::MixedStrategy my{nash::Player::Two, nash::behavior_to_mixed(t, eq.b2)};
  CHECK(g.is_equilibrium(mx, my));
  CHECK(g.expected_payoffs(mx, my) == std::pair(eq.u, eq.v));
}

TEST_CASE("sequence form Lemke on random trees") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 80; ++i) {
    const auto t = gen::tree(rng);
    const auto sf = nash::build_sequence_form(t);
    const auto x = nash::behavior_to_realization(t, sf.p1, nash::random_behavior(t, 0, rng));
    const auto y = nash::behavior_to_realization(t, sf.p2, nash::random_behavior(t, 1, rng));
    const auto eq = nash::lemke_prior(t, sf, x, y);
    const auto g = t.to_strategic_form();
    const nash::MixedStrategy mx{nash::Player::One, nash::behavior_to_mixed(t, eq.b1)};
    const nash::MixedStrategy my{nash::Player::Two, nash::behavior_to_mixed(t, eq.b2)};
    CHECK(oracle::is_nash(g, mx.probs, my.probs));
    CHECK(nash::sequence_payoff(sf.payoff1, eq.x, eq.y) == eq.u);
    CHECK(nash::sequence_payoff(sf.payoff2, eq.x, eq.y) == eq.v);
  }
}

TEST_CASE("path following can be cancelled") {
  std::stop_source src;
  src.request_stop();
  std::mt19937_64 rng(1);
  const auto g = gen::bimatrix(6, 6, rng);
  CHECK_THROWS_AS(nash::lemke_howson(g, 0, src.get_token()), nash::Cancelled);
  const RationalVector u(6, Rational(1, 6));
  CHECK_THROWS_AS(nash::lemke_prior(g, u, u, src.get_token()), nash::Cancelled);
}
