#include "nash/bimatrix.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nash {

bool MixedStrategy::is_valid() const {
  Rational total;
  for (const auto& p : probs) {
    if (p.sign() < 0) return false;
    total += p;
  }
  return total == Rational(1);
}

std::vector<std::size_t> MixedStrategy::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!probs[i].is_zero()) s.push_back(i);
  }
  return s;
}

MixedStrategy MixedStrategy::pure(Player p, std::size_t n, std::size_t index) {
  MixedStrategy s{p, RationalVector(n)};
  s.probs.at(index) = 1;
  return s;
}

MixedStrategy MixedStrategy::uniform(Player p, std::size_t n) {
  return MixedStrategy{p, RationalVector(n, Rational(1, static_cast<long>(n)))};
}

std::string default_strategy_name(std::size_t index, bool upper) {
  const char base = upper ? 'A' : 'a';
  const std::size_t letter = index % 26;
  const std::size_t repeat = index / 26 + 1;
  return std::string(repeat, static_cast<char>(base + letter));
}

namespace {

std::vector<std::string> names_or_default(std::vector<std::string> names, std::size_t n, bool upper) {
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(default_strategy_name(i, upper));
  }
  if (names.size() != n) throw GameError("strategy name count does not match the payoff matrix");
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) throw GameError("duplicate strategy name '" + name + "'");
  }
  return names;
}

void check_rectangular(const RationalMatrix& m, const char* what) {
  if (m.empty() || m.front().empty()) throw GameError(std::string(what) + " must be at least 1x1");
  for (const auto& row : m) {
    if (row.size() != m.front().size()) throw GameError(std::string(what) + " is not rectangular");
  }
}

}  // namespace

BimatrixGame::BimatrixGame(RationalMatrix a, RationalMatrix b, std::vector<std::string> row_names,
                           std::vector<std::string> col_names)
    : a_(std::move(a)), b_(std::move(b)) {
  check_rectangular(a_, "payoff matrix A");
  check_rectangular(b_, "payoff matrix B");
  if (a_.size() != b_.size() || a_.front().size() != b_.front().size()) {
    throw GameError("payoff matrices A and B differ in dimension");
  }
  row_names_ = names_or_default(std::move(row_names), a_.size(), true);
  col_names_ = names_or_default(std::move(col_names), a_.front().size(), false);
}

BimatrixGame BimatrixGame::zero_sum(RationalMatrix a, std::vector<std::string> row_names,
                                    std::vector<std::string> col_names) {
  RationalMatrix b = a;
  for (auto& row : b) {
    for (auto& x : row) x = -x;
  }
  return BimatrixGame(std::move(a), std::move(b), std::move(row_names), std::move(col_names));
}

BimatrixGame BimatrixGame::symmetric(RationalMatrix a, std::vector<std::string> row_names,
                                     std::vector<std::string> col_names) {
  check_rectangular(a, "payoff matrix A");
  const std::size_t n = a.size();
  if (a.front().size() != n) throw GameError("symmetric game needs a square payoff matrix");
  RationalMatrix b(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a[j][i];
  }
  return BimatrixGame(std::move(a), std::move(b), std::move(row_names), std::move(col_names));
}

void BimatrixGame::check_strategy(const MixedStrategy& s, Player expected, std::size_t n) const {
  if (s.player != expected) throw GameError("strategy belongs to the wrong player");
  if (s.probs.size() != n) throw GameError("strategy dimension does not match the game");
}

RationalVector BimatrixGame::row_payoffs(const RationalVector& y) const {
  if (y.size() != cols()) throw GameError("strategy dimension does not match the game");
  RationalVector out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = dot(a_[i], y);
  return out;
}

RationalVector BimatrixGame::col_payoffs(const RationalVector& x) const {
  if (x.size() != rows()) throw GameError("strategy dimension does not match the game");
  RationalVector out(cols());
  for (std::size_t i = 0; i < rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols(); ++j) out[j] += x[i] * b_[i][j];
  }
  return out;
}

std::pair<Rational, Rational> BimatrixGame::expected_payoffs(const MixedStrategy& x,
                                                             const MixedStrategy& y) const {
  check_strategy(x, Player::One, rows());
  check_strategy(y, Player::Two, cols());
  return {dot(x.probs, row_payoffs(y.probs)), dot(col_payoffs(x.probs), y.probs)};
}

bool BimatrixGame::is_equilibrium(const MixedStrategy& x, const MixedStrategy& y) const {
  check_strategy(x, Player::One, rows());
  check_strategy(y, Player::Two, cols());
  if (!x.is_valid() || !y.is_valid()) return false;
  const auto best_is_supported = [](const RationalVector& payoffs, const RationalVector& probs) {
    Rational best = payoffs.front();
    for (const auto& p : payoffs) best = std::max(best, p);
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (!probs[k].is_zero() && payoffs[k] != best) return false;
    }
    return true;
  };
  return best_is_supported(row_payoffs(y.probs), x.probs) &&
         best_is_supported(col_payoffs(x.probs), y.probs);
}

namespace {

struct MatrixText {
  std::vector<RationalMatrix> blocks;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
};

MatrixText read_blocks(std::string_view text) {
  MatrixText out;
  RationalMatrix current;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    if (tokens >> tok && (tok == "rows:" || tok == "cols:")) {
      auto& names = tok == "rows:" ? out.rows : out.cols;
      if (!names.empty()) throw ParseError("line " + std::to_string(line_no) + ": duplicate " + tok + " line");
      while (tokens >> tok) names.push_back(tok);
      continue;
    }
    tokens.clear();
    tokens.seekg(0);
    RationalVector row;
    while (tokens >> tok) {
      try {
        row.push_back(Rational::parse(tok));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (row.empty()) {
      if (!current.empty()) out.blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(std::move(row));
    }
  }
  if (!current.empty()) out.blocks.push_back(std::move(current));
  return out;
}

}  // namespace

BimatrixGame parse_bimatrix(std::string_view text, bool zero_sum, bool symmetric) {
  if (zero_sum && symmetric) throw GameError("zero-sum and symmetric modes are exclusive");
  auto parsed = read_blocks(text);
  auto& blocks = parsed.blocks;
  const std::size_t expected = (zero_sum || symmetric) ? 1 : 2;
  if (blocks.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " payoff block(s), found " +
                     std::to_string(blocks.size()));
  }
  if (zero_sum) return BimatrixGame::zero_sum(std::move(blocks[0]), std::move(parsed.rows), std::move(parsed.cols));
  if (symmetric) return BimatrixGame::symmetric(std::move(blocks[0]), std::move(parsed.rows), std::move(parsed.cols));
  return BimatrixGame(std::move(blocks[0]), std::move(blocks[1]), std::move(parsed.rows), std::move(parsed.cols));
}

std::string format_bimatrix(const BimatrixGame& game) {
  std::ostringstream out;
  out << "rows:";
  for (const auto& n : game.row_names()) out << ' ' << n;
  out << "\ncols:";
  for (const auto& n : game.col_names()) out << ' ' << n;
  out << "\n\n";
  const auto block = [&out](const RationalMatrix& m) {
    for (const auto& row : m) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << '\n';
    }
  };
  block(game.a());
  out << '\n';
  block(game.b());
  return out.str();
}

}  // namespace nash
