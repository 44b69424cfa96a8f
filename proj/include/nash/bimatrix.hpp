#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nash/rational.hpp"

namespace nash {

/// Raised for structurally invalid games and strategies.
class GameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A valid game that the requested computation does not handle, such as a
/// tree with more than two players.
class UnsupportedGame : public GameError {
 public:
  using GameError::GameError;
};

enum class Player { One = 0, Two = 1 };

/// Probability vector over one player's pure strategies.
struct MixedStrategy {
  Player player = Player::One;
  RationalVector probs;

  /// Nonnegative entries summing to exactly one.
  bool is_valid() const;
  std::vector<std::size_t> support() const;
  static MixedStrategy pure(Player p, std::size_t n, std::size_t index);
  static MixedStrategy uniform(Player p, std::size_t n);

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

/// Two-player game in strategic form.  A holds player 1's payoffs and B
/// player 2's, both indexed [row][column].
class BimatrixGame {
 public:
  BimatrixGame(RationalMatrix a, RationalMatrix b, std::vector<std::string> row_names = {},
               std::vector<std::string> col_names = {});

  /// B = -A.
  static BimatrixGame zero_sum(RationalMatrix a, std::vector<std::string> row_names = {},
                               std::vector<std::string> col_names = {});
  /// B = transpose(A); A must be square.
  static BimatrixGame symmetric(RationalMatrix a, std::vector<std::string> row_names = {},
                                std::vector<std::string> col_names = {});

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return a_.front().size(); }
  const RationalMatrix& a() const { return a_; }
  const RationalMatrix& b() const { return b_; }
  const std::vector<std::string>& row_names() const { return row_names_; }
  const std::vector<std::string>& col_names() const { return col_names_; }

  /// (x^T A y, x^T B y).
  std::pair<Rational, Rational> expected_payoffs(const MixedStrategy& x, const MixedStrategy& y) const;
  /// A y, the payoff of each row against y.
  RationalVector row_payoffs(const RationalVector& y) const;
  /// x^T B, the payoff of each column against x.
  RationalVector col_payoffs(const RationalVector& x) const;

  /// Every pure strategy in the support of x is a best response to y, and
  /// vice versa.
  bool is_equilibrium(const MixedStrategy& x, const MixedStrategy& y) const;

  friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;

 private:
  void check_strategy(const MixedStrategy& s, Player expected, std::size_t n) const;

  RationalMatrix a_;
  RationalMatrix b_;
  std::vector<std::string> row_names_;
  std::vector<std::string> col_names_;
};

/// Default strategy names: "A", "B", ... (upper case) or "a", "b", ...
/// (lower case), continuing with doubled letters after the alphabet.
std::string default_strategy_name(std::size_t index, bool upper);

/// Reads the text matrix format: whitespace-separated rationals, one row per
/// line, blocks separated by blank lines.  Two blocks give A and B; with
/// `zero_sum` or `symmetric` a single block gives A.  Optional lines
/// "rows: T B" and "cols: l r" name the strategies; '#' starts a comment.
BimatrixGame parse_bimatrix(std::string_view text, bool zero_sum = false, bool symmetric = false);

/// Inverse of parse_bimatrix for the two-block form.
std::string format_bimatrix(const BimatrixGame& game);

}  // namespace nash
