#pragma once

#include <functional>
#include <optional>
#include <stop_token>
#include <vector>

#include "nash/integer_tableau.hpp"
#include "nash/rational.hpp"

namespace nash {

/// Linear system coeffs . z = rhs with a feasible starting basis.  Free
/// variables never leave the basis; complementary pairs drive the path.
struct ComplementarySystem {
  RationalMatrix coeffs;
  RationalVector rhs;
  std::vector<std::size_t> start_basis;  // one variable per row, any order
  std::vector<bool> free;
  std::vector<std::optional<std::size_t>> complement;
};

struct PivotPath {
  IntegerTableau tableau;
  std::size_t pivots = 0;
};

/// Enters `first`, then repeatedly enters the complement of the variable
/// that just left, until `done(leaving)` holds.  The leaving variable is
/// chosen by the lexicographic minimum ratio over the starting basis
/// columns, so the starting basis must be feasible.  Throws
/// std::logic_error on ray termination and Cancelled when `stop` fires.
PivotPath follow_path(const ComplementarySystem& sys, std::size_t first,
                      const std::function<bool(std::size_t)>& done, std::stop_token stop = {});

}  // namespace nash
