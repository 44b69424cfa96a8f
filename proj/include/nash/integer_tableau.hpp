#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nash/rational.hpp"

namespace nash {

/// Simplex tableau over the integers.
///
/// Row r holds  scale * (B^-1 [M | b])_r  for the current basis B, so every
/// entry is a subdeterminant of the original system and pivots only need
/// exact integer division by the previous scale.  The scale is the absolute
/// value of det(B) relative to the starting basis.  Variables are numbered
/// 0..vars()-1; the right-hand side is kept separately.
class IntegerTableau {
 public:
  IntegerTableau() = default;

  /// `coeffs` is rows x vars, and column basis[r] must be scale * e_r.
  IntegerTableau(std::vector<std::vector<BigInt>> coeffs, std::vector<BigInt> rhs,
                 std::vector<std::size_t> basis, BigInt scale = 1);

  /// Builds an integer tableau from rational rows by clearing each row's
  /// denominators and pivoting `basis` in by exact integer elimination.
  /// Throws DomainError when the requested basis is singular.
  static IntegerTableau from_rational(const RationalMatrix& coeffs, const RationalVector& rhs,
                                      const std::vector<std::size_t>& basis);

  /// Same, but only the set of basic variables is given; each is pivoted
  /// into some row not yet holding one of them.
  static IntegerTableau from_rational_set(const RationalMatrix& coeffs, const RationalVector& rhs,
                                          const std::vector<std::size_t>& basic_vars);

  std::size_t rows() const { return basis_.size(); }
  std::size_t vars() const { return row_of_.size(); }

  const BigInt& entry(std::size_t row, std::size_t var) const { return cells_[row][var]; }
  const BigInt& rhs(std::size_t row) const { return cells_[row][vars()]; }
  const BigInt& scale() const { return scale_; }

  std::size_t basic_var(std::size_t row) const { return basis_[row]; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::optional<std::size_t> row_of(std::size_t var) const;
  bool is_basic(std::size_t var) const { return row_of_[var] >= 0; }

  /// Current value of a variable: rhs / scale when basic, zero otherwise.
  Rational value(std::size_t var) const;
  /// entry / scale as an exact fraction.
  Rational ratio_entry(std::size_t row, std::size_t var) const;

  /// Exchanges the basic variable of `row` for `entering`.  Throws
  /// DomainError on a zero pivot element.
  void pivot(std::size_t row, std::size_t entering);
  void pivot_vars(std::size_t leaving, std::size_t entering);

  friend bool operator==(const IntegerTableau&, const IntegerTableau&) = default;

 private:
  std::vector<std::vector<BigInt>> cells_;  // rows x (vars + 1), rhs last
  std::vector<std::size_t> basis_;
  std::vector<long> row_of_;
  BigInt scale_ = 1;

  static IntegerTableau scaled_identity_start(const RationalMatrix& coeffs, const RationalVector& rhs);

  static constexpr std::size_t kNoVar = static_cast<std::size_t>(-1);
};

}  // namespace nash
