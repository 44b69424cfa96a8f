#include "nash/path_follow.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "nash/complementary_pivoting.hpp"

namespace nash {
namespace {

// Rows of E x = e read as nested choices: each row picks one of its +1
// columns, and a -1 column marks the sequence the row hangs below.
struct ChoiceStructure {
  std::vector<std::vector<std::size_t>> terms;
  std::vector<std::vector<std::size_t>> rows_below;  // per column

  ChoiceStructure(const RationalMatrix& e, std::size_t cols) : terms(e.size()), rows_below(cols) {
    for (std::size_t h = 0; h < e.size(); ++h) {
      for (std::size_t s = 0; s < cols; ++s) {
        if (e[h][s] == Rational(1)) terms[h].push_back(s);
        else if (e[h][s] == Rational(-1)) rows_below[s].push_back(h);
        else if (!e[h][s].is_zero()) throw GameError("constraint matrix must have entries 0, 1, -1");
      }
      if (terms[h].empty()) throw GameError("constraint row without choices");
    }
  }

  // Best pure choice in every row against the payoff vector c (ties to the
  // lowest column).
  std::vector<std::size_t> best_response(const RationalVector& c) const {
    std::vector<std::optional<Rational>> value(c.size());
    std::vector<std::size_t> chosen(terms.size());
    std::function<Rational(std::size_t)> seq_value = [&](std::size_t s) -> Rational {
      if (value[s]) return *value[s];
      Rational total = c[s];
      for (std::size_t h : rows_below[s]) total += row_value(h, chosen, seq_value);
      value[s] = total;
      return total;
    };
    for (std::size_t h = 0; h < terms.size(); ++h) row_value(h, chosen, seq_value);
    return chosen;
  }

 private:
  Rational row_value(std::size_t h, std::vector<std::size_t>& chosen,
                     const std::function<Rational(std::size_t)>& seq_value) const {
    std::size_t best = terms[h].front();
    Rational best_value = seq_value(best);
    for (std::size_t s : terms[h]) {
      const Rational v = seq_value(s);
      if (v > best_value) {
        best = s;
        best_value = v;
      }
    }
    chosen[h] = best;
    return best_value;
  }
};

RationalVector times(const RationalMatrix& m, const RationalVector& v) {
  RationalVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

RationalVector times_transposed(const RationalMatrix& m, const RationalVector& v) {
  RationalVector out(m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += m[i][j] * v[i];
  }
  return out;
}

struct PriorSolution {
  RationalVector x;
  RationalVector y;
  std::size_t pivots;
};

// Covering-vector construction for the system
//   w1 = E'p - A y - (A ybar) z0 >= 0  complementary to x >= 0
//   w2 = F'q - B'x - (B'xbar) z0 >= 0  complementary to y >= 0
//   E x + e z0 = e,  F y + f z0 = f
// started at z0 = 1 and stopped when z0 leaves.  A and B must be
// nonpositive.
PriorSolution solve_with_prior(const RationalMatrix& e_mat, const RationalVector& e, const RationalMatrix& f_mat,
                               const RationalVector& f, const RationalMatrix& a, const RationalMatrix& b,
                               const RationalVector& x_prior, const RationalVector& y_prior,
                               const std::stop_token& stop) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = a.front().size();
  const std::size_t k1 = e_mat.size();
  const std::size_t k2 = f_mat.size();
  const std::size_t xv = 0, yv = n1, pv = n1 + n2, qv = pv + k1, z0 = qv + k2, w1 = z0 + 1, w2 = w1 + n1;
  const std::size_t nvars = w2 + n2;

  const RationalVector ay = times(a, y_prior);
  const RationalVector bx = times_transposed(b, x_prior);

  ComplementarySystem sys;
  sys.free.assign(nvars, false);
  sys.complement.assign(nvars, std::nullopt);
  for (std::size_t k = pv; k < z0; ++k) sys.free[k] = true;
  for (std::size_t s = 0; s < n1; ++s) {
    sys.complement[xv + s] = w1 + s;
    sys.complement[w1 + s] = xv + s;
  }
  for (std::size_t t = 0; t < n2; ++t) {
    sys.complement[yv + t] = w2 + t;
    sys.complement[w2 + t] = yv + t;
  }

  for (std::size_t s = 0; s < n1; ++s) {
    RationalVector row(nvars);
    row[w1 + s] = Rational(1);
    for (std::size_t h = 0; h < k1; ++h) row[pv + h] = -e_mat[h][s];
    for (std::size_t t = 0; t < n2; ++t) row[yv + t] = a[s][t];
    row[z0] = ay[s];
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(Rational());
  }
  for (std::size_t t = 0; t < n2; ++t) {
    RationalVector row(nvars);
    row[w2 + t] = Rational(1);
    for (std::size_t h = 0; h < k2; ++h) row[qv + h] = -f_mat[h][t];
    for (std::size_t s = 0; s < n1; ++s) row[xv + s] = b[s][t];
    row[z0] = bx[t];
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(Rational());
  }
  for (std::size_t h = 0; h < k1; ++h) {
    RationalVector row(nvars);
    for (std::size_t s = 0; s < n1; ++s) row[xv + s] = e_mat[h][s];
    row[z0] = e[h];
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(e[h]);
  }
  for (std::size_t h = 0; h < k2; ++h) {
    RationalVector row(nvars);
    for (std::size_t t = 0; t < n2; ++t) row[yv + t] = f_mat[h][t];
    row[z0] = f[h];
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(f[h]);
  }

  // Start: both players best respond to the prior at every information set.
  // The chosen sequences are basic at zero except the first choice of
  // player 1, which enters first.
  const auto chosen1 = ChoiceStructure(e_mat, n1).best_response(ay);
  const auto chosen2 = ChoiceStructure(f_mat, n2).best_response(bx);
  std::vector<bool> is_chosen1(n1, false), is_chosen2(n2, false);
  for (auto s : chosen1) is_chosen1[s] = true;
  for (auto t : chosen2) is_chosen2[t] = true;
  const std::size_t first = xv + chosen1.front();
  for (std::size_t k = pv; k <= z0; ++k) sys.start_basis.push_back(k);
  for (std::size_t s = 0; s < n1; ++s) {
    if (!is_chosen1[s]) sys.start_basis.push_back(w1 + s);
    else if (xv + s != first) sys.start_basis.push_back(xv + s);
  }
  for (std::size_t t = 0; t < n2; ++t) sys.start_basis.push_back(is_chosen2[t] ? yv + t : w2 + t);

  const PivotPath path = follow_path(sys, first, [z0](std::size_t leaving) { return leaving == z0; }, stop);
  PriorSolution out{{}, {}, path.pivots};
  for (std::size_t s = 0; s < n1; ++s) out.x.push_back(path.tableau.value(xv + s));
  for (std::size_t t = 0; t < n2; ++t) out.y.push_back(path.tableau.value(yv + t));
  return out;
}

Rational max_entry(const RationalMatrix& m) {
  Rational best = m.front().front();
  for (const auto& row : m) {
    for (const auto& v : row) best = std::max(best, v);
  }
  return best;
}

void check_distribution(const RationalVector& p, std::size_t n, const char* who) {
  if (!MixedStrategy{Player::One, p}.is_valid() || p.size() != n) {
    throw GameError(std::string("invalid prior for ") + who);
  }
}

}  // namespace

MixedEquilibrium lemke_howson(const BimatrixGame& game, std::size_t missing_label, std::stop_token stop) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  if (missing_label >= m + n) throw GameError("missing label out of range");
  // Positive payoffs keep the polytopes bounded.
  Rational low = game.a()[0][0];
  for (const auto* mat : {&game.a(), &game.b()}) {
    for (const auto& row : *mat) {
      for (const auto& v : row) low = std::min(low, v);
    }
  }
  const Rational shift = Rational(1) - low;
  const std::size_t xv = 0, yv = m, rv = m + n, sv = 2 * m + n, nvars = 2 * (m + n);

  ComplementarySystem sys;
  sys.free.assign(nvars, false);
  sys.complement.assign(nvars, std::nullopt);
  std::vector<std::size_t> label(nvars);
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector row(nvars);
    for (std::size_t j = 0; j < n; ++j) row[yv + j] = game.a()[i][j] + shift;
    row[rv + i] = Rational(1);
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(Rational(1));
    sys.complement[xv + i] = rv + i;
    sys.complement[rv + i] = xv + i;
    label[xv + i] = label[rv + i] = i;
    sys.start_basis.push_back(rv + i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(nvars);
    for (std::size_t i = 0; i < m; ++i) row[xv + i] = game.b()[i][j] + shift;
    row[sv + j] = Rational(1);
    sys.coeffs.push_back(std::move(row));
    sys.rhs.push_back(Rational(1));
    sys.complement[yv + j] = sv + j;
    sys.complement[sv + j] = yv + j;
    label[yv + j] = label[sv + j] = m + j;
    sys.start_basis.push_back(sv + j);
  }
  const std::size_t first = missing_label < m ? xv + missing_label : yv + missing_label - m;
  const PivotPath path =
      follow_path(sys, first, [&](std::size_t leaving) { return label[leaving] == missing_label; }, stop);

  RationalVector x, y;
  for (std::size_t i = 0; i < m; ++i) x.push_back(path.tableau.value(xv + i));
  for (std::size_t j = 0; j < n; ++j) y.push_back(path.tableau.value(yv + j));
  const Rational sx = sum(x), sy = sum(y);
  for (auto& v : x) v /= sx;
  for (auto& v : y) v /= sy;
  MixedEquilibrium eq{{Player::One, x}, {Player::Two, y}, {}, {}, path.pivots};
  std::tie(eq.u, eq.v) = game.expected_payoffs(eq.x, eq.y);
  return eq;
}

MixedEquilibrium lemke_prior(const BimatrixGame& game, const RationalVector& x_prior, const RationalVector& y_prior,
                             std::stop_token stop) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  check_distribution(x_prior, m, "player 1");
  check_distribution(y_prior, n, "player 2");
  const auto negative = [](const RationalMatrix& mat) {
    const Rational shift = max_entry(mat) + Rational(1);
    RationalMatrix out = mat;
    for (auto& row : out) {
      for (auto& v : row) v -= shift;
    }
    return out;
  };
  const RationalMatrix e{RationalVector(m, Rational(1))};
  const RationalMatrix f{RationalVector(n, Rational(1))};
  const auto sol = solve_with_prior(e, {Rational(1)}, f, {Rational(1)}, negative(game.a()), negative(game.b()),
                                    x_prior, y_prior, stop);
  MixedEquilibrium eq{{Player::One, sol.x}, {Player::Two, sol.y}, {}, {}, sol.pivots};
  std::tie(eq.u, eq.v) = game.expected_payoffs(eq.x, eq.y);
  return eq;
}

SequenceEquilibrium lemke_prior(const GameTree& tree, const SequenceForm& sf, const RealizationPlan& x_prior,
                                const RealizationPlan& y_prior, std::stop_token stop) {
  if (!is_feasible(sf.p1, x_prior)) throw GameError("prior of player 1 is not a realization plan");
  if (!is_feasible(sf.p2, y_prior)) throw GameError("prior of player 2 is not a realization plan");
  // Subtracting a constant from every leaf payoff moves each entry by the
  // constant times its chance weight and leaves the equilibria unchanged.
  RationalMatrix a = sf.dense_payoff(0);
  RationalMatrix b = sf.dense_payoff(1);
  const Rational shift = std::max(max_entry(a), max_entry(b));
  Rational top = shift;
  for (std::size_t k = 0; k < sf.chance.size(); ++k) {
    const auto& c = sf.chance[k];
    if (c.value.is_zero()) continue;
    top = std::max(top, std::max(sf.payoff1[k].value, sf.payoff2[k].value) / c.value);
  }
  const Rational lower = top + Rational(1);
  for (const auto& c : sf.chance) {
    a[c.row][c.col] -= lower * c.value;
    b[c.row][c.col] -= lower * c.value;
  }
  const auto sol = solve_with_prior(sf.p1.constraints, sf.p1.rhs, sf.p2.constraints, sf.p2.rhs, a, b,
                                    x_prior.weights, y_prior.weights, stop);
  SequenceEquilibrium eq;
  eq.x = {0, sol.x};
  eq.y = {1, sol.y};
  eq.b1 = realization_to_behavior(tree, sf.p1, eq.x);
  eq.b2 = realization_to_behavior(tree, sf.p2, eq.y);
  eq.u = sequence_payoff(sf.payoff1, eq.x, eq.y);
  eq.v = sequence_payoff(sf.payoff2, eq.x, eq.y);
  eq.pivots = sol.pivots;
  return eq;
}

RationalVector random_simplex_point(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw GameError("empty simplex");
  constexpr long kGrid = 1 << 20;
  std::uniform_int_distribution<long> draw(0, kGrid);
  std::vector<long> cuts{0, kGrid};
  for (std::size_t k = 1; k < n; ++k) cuts.push_back(draw(rng));
  std::sort(cuts.begin(), cuts.end());
  RationalVector out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(Rational(cuts[k + 1] - cuts[k], kGrid));
  return out;
}

BehaviorStrategy random_behavior(const GameTree& tree, std::size_t player, std::mt19937_64& rng) {
  BehaviorStrategy beh{player, tree.infosets_of(player), {}};
  for (InfosetId h : beh.infosets) beh.probs.push_back(random_simplex_point(tree.infoset(h).moves.size(), rng));
  return beh;
}

}  // namespace nash
