#pragma once

#include <random>
#include <stop_token>

#include "nash/bimatrix.hpp"
#include "nash/game_tree.hpp"
#include "nash/sequence_form.hpp"

namespace nash {

struct MixedEquilibrium {
  MixedStrategy x;
  MixedStrategy y;
  Rational u;
  Rational v;
  std::size_t pivots = 0;
};

struct SequenceEquilibrium {
  RealizationPlan x;
  RealizationPlan y;
  BehaviorStrategy b1;
  BehaviorStrategy b2;
  Rational u;
  Rational v;
  std::size_t pivots = 0;
};

/// Lemke-Howson from the artificial equilibrium, dropping `missing_label`
/// (0..m-1 rows, m..m+n-1 columns).
MixedEquilibrium lemke_howson(const BimatrixGame& game, std::size_t missing_label, std::stop_token stop = {});

/// Lemke's algorithm with covering vector built from the prior: the path
/// starts at best responses to the prior and ends when its weight is zero.
MixedEquilibrium lemke_prior(const BimatrixGame& game, const RationalVector& x_prior, const RationalVector& y_prior,
                             std::stop_token stop = {});

/// The same on the sequence form; priors are realization plans.
SequenceEquilibrium lemke_prior(const GameTree& tree, const SequenceForm& sf, const RealizationPlan& x_prior,
                                const RealizationPlan& y_prior, std::stop_token stop = {});

/// A point of the (n-1)-simplex: spacings of sorted uniform draws from a
/// fine rational grid, an exact stand-in for a flat Dirichlet draw.
RationalVector random_simplex_point(std::size_t n, std::mt19937_64& rng);
BehaviorStrategy random_behavior(const GameTree& tree, std::size_t player, std::mt19937_64& rng);

}  // namespace nash
