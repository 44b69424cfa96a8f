#include <doctest.h>

#include <random>

#include "nash/integer_tableau.hpp"

using nash::BigInt;
using nash::IntegerTableau;
using nash::Rational;
using nash::RationalMatrix;
using nash::RationalVector;

namespace {

// Plain rational pivot on [M | b].
void rational_pivot(RationalMatrix& t, std::size_t row, std::size_t col) {
  const Rational p = t[row][col];
  for (auto& e : t[row]) e /= p;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (r == row) continue;
    const Rational f = t[r][col];
    for (std::size_t k = 0; k < t[r].size(); ++k) t[r][k] -= f * t[row][k];
  }
}

void check_matches(const IntegerTableau& t, const RationalMatrix& ref) {
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t k = 0; k < t.vars(); ++k) CHECK(t.ratio_entry(r, k) == ref[r][k]);
    CHECK(Rational(t.rhs(r), t.scale()) == ref[r].back());
  }
}

}  // namespace

TEST_CASE("pivot on an identity tableau changes nothing") {
  IntegerTableau t({{1, 0}, {0, 1}}, {3, 4}, {0, 1});
  const IntegerTableau before = t;
  t.pivot(1, 1);
  CHECK(t == before);
  CHECK(t.scale() == 1);
}

TEST_CASE("integer pivots agree with rational pivots") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    // 4 x 6 system with slack columns 2..5
    RationalMatrix coeffs(4, RationalVector(6));
    RationalVector rhs(4);
    for (std::size_t r = 0; r < 4; ++r) {
      coeffs[r][0] = d(rng);
      coeffs[r][1] = d(rng);
      coeffs[r][2 + r] = 1;
      rhs[r] = d(rng);
    }
    auto t = IntegerTableau::from_rational(coeffs, rhs, {2, 3, 4, 5});
    RationalMatrix ref = coeffs;
    for (std::size_t r = 0; r < 4; ++r) ref[r].push_back(rhs[r]);
    for (int step = 0; step < 4; ++step) {
      const std::size_t row = static_cast<std::size_t>(d(rng) + 6) % 4;
      const std::size_t col = static_cast<std::size_t>(d(rng) + 6) % 6;
      if (ref[row][col].is_zero() || t.is_basic(col)) continue;
      t.pivot(row, col);
      rational_pivot(ref, row, col);
      check_matches(t, ref);
      CHECK(t.basic_var(row) == col);
      CHECK(t.value(col) == ref[row].back());
    }
  }
}

TEST_CASE("two pivots and their reversals restore the tableau") {
  const RationalMatrix coeffs{{2, 1, 1, 0}, {1, 3, 0, 1}};
  const RationalVector rhs{4, 6};
  const auto start = IntegerTableau::from_rational(coeffs, rhs, {2, 3});
  auto t = start;
  t.pivot_vars(2, 0);
  t.pivot_vars(3, 1);
  CHECK(t.value(0) == Rational(6, 5));
  CHECK(t.value(1) == Rational(8, 5));
  t.pivot_vars(1, 3);
  t.pivot_vars(0, 2);
  CHECK(t == start);
}

TEST_CASE("bad pivots are rejected") {
  auto t = IntegerTableau::from_rational({{1, 0, 1}, {0, 1, 0}}, {1, 1}, {0, 1});
  CHECK_THROWS_AS(t.pivot(1, 2), nash::DomainError);
  CHECK_THROWS_AS(IntegerTableau::from_rational({{1, 1}, {2, 2}}, {1, 2}, {0, 1}), nash::DomainError);
  CHECK_THROWS_AS(IntegerTableau::from_rational_set({{1, 1}, {2, 2}}, {1, 2}, {0, 1}), nash::DomainError);
}

TEST_CASE("from_rational_set finds rows for the basic variables") {
  const auto t = IntegerTableau::from_rational_set({{0, 1, 1}, {1, 1, 0}}, {2, 3}, {0, 1});
  CHECK(t.value(0) == 1);
  CHECK(t.value(1) == 2);
  CHECK(!t.is_basic(2));
}
