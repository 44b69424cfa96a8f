#pragma once

#include <string>
#include <vector>

#include "nash/components.hpp"
#include "nash/enumeration.hpp"
#include "nash/game_tree.hpp"
#include "nash/path_follow.hpp"

namespace nash {

enum class RenderMode { Rational, Decimal, Both };

/// Four decimal places, rounded half away from zero, trailing zeros
/// trimmed; integers keep one decimal ("1.0") except zero ("0").
std::string render_decimal(const Rational& r);

/// "m x n Payoff player k" blocks with named rows and columns.
std::string render_strategic_form(const BimatrixGame& game);

/// Strategic form, EE lines and, if given, the component blocks.
std::string render_equilibria(const BimatrixGame& game, const std::vector<ExtremeEquilibrium>& eqs,
                              const std::vector<Component>* components, RenderMode mode);

/// A single equilibrium found by path following, numbered EE 1.
std::string render_equilibrium(const BimatrixGame& game, const MixedEquilibrium& eq, RenderMode mode);

/// Behavior strategies and payoffs of a sequence-form equilibrium.
std::string render_behavior_equilibrium(const GameTree& tree, const SequenceEquilibrium& eq, RenderMode mode);

ExtremeEquilibrium as_extreme(const MixedEquilibrium& eq);

}  // namespace nash
