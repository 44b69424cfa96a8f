#include "nash/polyhedron.hpp"

#include <algorithm>
#include <set>

#include "nash/cancel.hpp"
#include "nash/integer_tableau.hpp"

namespace nash {
namespace {

// Indices of a maximal linearly independent subset of the equations, or
// nullopt if they are inconsistent.
std::optional<std::vector<std::size_t>> independent_equations(const std::vector<Constraint>& eqs, std::size_t dim) {
  std::vector<RationalVector> basis;  // reduced rows, each with its pivot column
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> keep;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    RationalVector row = eqs[e].coeffs;
    row.push_back(eqs[e].rhs);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational f = row[pivots[b]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= dim; ++j) row[j] -= f * basis[b][j];
    }
    std::size_t p = 0;
    while (p < dim && row[p].is_zero()) ++p;
    if (p == dim) {
      if (!row[dim].is_zero()) return std::nullopt;
      continue;
    }
    const Rational lead = row[p];
    for (auto& c : row) c /= lead;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational f = basis[b][p];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= dim; ++j) basis[b][j] -= f * row[j];
    }
    basis.push_back(std::move(row));
    pivots.push_back(p);
    keep.push_back(e);
  }
  return keep;
}

// Finds a feasible basis.  Returns the inequalities whose slacks are basic,
// or nullopt when the polyhedron is empty.
std::optional<std::vector<std::size_t>> feasible_basis(const HPolyhedron& poly, const std::vector<Constraint>& eqs,
                                                       const std::stop_token& stop) {
  const std::size_t d = poly.dim;
  const std::size_t m = poly.inequalities.size();
  const std::size_t q = eqs.size();
  const std::size_t nvars = d + m + q;
  RationalMatrix coeffs;
  RationalVector rhs;
  std::vector<std::size_t> basis;
  for (std::size_t k = 0; k < m; ++k) {
    RationalVector row(nvars);
    std::copy(poly.inequalities[k].coeffs.begin(), poly.inequalities[k].coeffs.end(), row.begin());
    row[d + k] = Rational(1);
    coeffs.push_back(std::move(row));
    rhs.push_back(poly.inequalities[k].rhs);
    basis.push_back(d + k);
  }
  for (std::size_t e = 0; e < q; ++e) {
    RationalVector row(nvars);
    std::copy(eqs[e].coeffs.begin(), eqs[e].coeffs.end(), row.begin());
    row[d + m + e] = Rational(1);
    coeffs.push_back(std::move(row));
    rhs.push_back(eqs[e].rhs);
    basis.push_back(d + m + e);
  }
  IntegerTableau t = IntegerTableau::from_rational(coeffs, rhs, basis);
  const auto is_x = [d](std::size_t v) { return v < d; };
  const auto is_t = [d, m](std::size_t v) { return v >= d + m; };

  // Decision variables are free: bring them all into the basis, using
  // equation rows first.
  for (std::size_t j = 0; j < d; ++j) {
    std::optional<std::size_t> row;
    for (std::size_t r = 0; r < t.rows() && !row; ++r) {
      if (is_t(t.basic_var(r)) && t.entry(r, j) != 0) row = r;
    }
    for (std::size_t r = 0; r < t.rows() && !row; ++r) {
      if (!is_x(t.basic_var(r)) && t.entry(r, j) != 0) row = r;
    }
    if (!row) throw GameError("polyhedron contains a line");
    t.pivot(*row, j);
  }
  // Equation slacks must be zero: drive them out of the basis.
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (!is_t(t.basic_var(r))) continue;
    std::size_t k = 0;
    while (k < m && (t.is_basic(d + k) || t.entry(r, d + k) == 0)) ++k;
    if (k == m) {
      if (t.rhs(r) != 0) return std::nullopt;
      throw std::logic_error("vertex enumeration: dependent equations survived elimination");
    }
    t.pivot(r, d + k);
  }

  std::vector<std::size_t> slack_rows;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (!is_x(t.basic_var(r))) slack_rows.push_back(r);
  }
  std::vector<std::size_t> basic;
  bool feasible = true;
  for (std::size_t r : slack_rows) {
    basic.push_back(t.basic_var(r) - d);
    if (t.rhs(r) < 0) feasible = false;
  }
  if (feasible) return basic;

  // Phase one over the slack dictionary with an artificial variable x0
  // subtracted from every row.
  const std::size_t x0 = m;
  RationalMatrix dict;
  RationalVector beta;
  for (std::size_t r : slack_rows) {
    RationalVector row(m + 1);
    for (std::size_t k = 0; k < m; ++k) row[k] = t.ratio_entry(r, d + k);
    row[x0] = Rational(-1);
    dict.push_back(std::move(row));
    beta.push_back(t.value(t.basic_var(r)));
  }
  IntegerTableau p = IntegerTableau::from_rational(dict, beta, basic);
  std::size_t worst = 0;
  for (std::size_t r = 1; r < p.rows(); ++r) {
    if (p.rhs(r) < p.rhs(worst)) worst = r;
  }
  p.pivot(worst, x0);
  while (p.is_basic(x0)) {
    check_cancelled(stop);
    const std::size_t r0 = *p.row_of(x0);
    std::optional<std::size_t> entering;
    for (std::size_t k = 0; k < m && !entering; ++k) {
      if (!p.is_basic(k) && p.entry(r0, k) > 0) entering = k;
    }
    if (!entering) {
      if (p.rhs(r0) != 0) return std::nullopt;
      std::size_t k = 0;
      while (k < m && (p.is_basic(k) || p.entry(r0, k) == 0)) ++k;
      p.pivot(r0, k);
      break;
    }
    std::optional<std::size_t> leave;
    for (std::size_t r = 0; r < p.rows(); ++r) {
      if (p.entry(r, *entering) <= 0) continue;
      if (!leave) {
        leave = r;
        continue;
      }
      const BigInt lhs = p.rhs(r) * p.entry(*leave, *entering);
      const BigInt rhs_ = p.rhs(*leave) * p.entry(r, *entering);
      const auto rank = [&](std::size_t row) { return row == r0 ? -1L : static_cast<long>(p.basic_var(row)); };
      if (lhs < rhs_ || (lhs == rhs_ && rank(r) < rank(*leave))) leave = r;
    }
    p.pivot(*leave, *entering);
  }
  basic.clear();
  for (std::size_t r = 0; r < p.rows(); ++r) basic.push_back(p.basic_var(r));
  return basic;
}

class ReverseSearch {
 public:
  ReverseSearch(const HPolyhedron& poly, const std::vector<Constraint>& eqs, const std::vector<std::size_t>& root_basic,
                const VertexSink& sink, const std::stop_token& stop)
      : poly_(poly), sink_(sink), stop_(stop), d_(poly.dim), m_(poly.inequalities.size()) {
    std::vector<bool> basic(m_, false);
    for (auto k : root_basic) basic[k] = true;
    for (std::size_t k = 0; k < m_; ++k) {
      if (basic[k]) order_.push_back(k);
    }
    for (std::size_t k = 0; k < m_; ++k) {
      if (!basic[k]) order_.push_back(k);
    }
    index_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) index_[order_[i]] = i;

    const std::size_t w = d_ + m_;
    const std::size_t nvars = w + 1;
    RationalMatrix coeffs;
    RationalVector rhs;
    for (std::size_t k = 0; k < m_; ++k) {
      RationalVector row(nvars);
      std::copy(poly.inequalities[k].coeffs.begin(), poly.inequalities[k].coeffs.end(), row.begin());
      row[d_ + k] = Rational(1);
      coeffs.push_back(std::move(row));
      rhs.push_back(poly.inequalities[k].rhs);
    }
    for (const auto& e : eqs) {
      RationalVector row(nvars);
      std::copy(e.coeffs.begin(), e.coeffs.end(), row.begin());
      coeffs.push_back(std::move(row));
      rhs.push_back(e.rhs);
    }
    // Objective: maximize w = -(sum of the root's cobasic slacks).
    RationalVector obj(nvars);
    for (std::size_t k = 0; k < m_; ++k) {
      if (!basic[k]) obj[d_ + k] = Rational(1);
    }
    obj[w] = Rational(1);
    coeffs.push_back(std::move(obj));
    rhs.push_back(Rational());

    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < d_; ++j) vars.push_back(j);
    for (auto k : root_basic) vars.push_back(d_ + k);
    vars.push_back(w);
    t_ = IntegerTableau::from_rational_set(coeffs, rhs, vars);
    wrow_ = *t_.row_of(w);
    for (const auto& e : poly.equations) {
      if (e.label) eq_labels_.push_back(*e.label);
    }
  }

  void run() {
    emit();
    std::size_t depth = 0;
    std::size_t next = 0;
    for (;;) {
      bool descended = false;
      for (; next < m_; ++next) {
        const std::size_t k = order_[next];
        if (!t_.is_basic(d_ + k) && reverse(k)) {
          descended = true;
          break;
        }
      }
      if (descended) {
        ++depth;
        next = 0;
        if (lexmin()) emit();
        continue;
      }
      if (depth == 0) break;
      const auto step = select();
      if (!step) throw std::logic_error("vertex enumeration: lost the path to the root");
      const std::size_t came_from = t_.basic_var(step->second) - d_;
      pivot(step->second, d_ + step->first);
      --depth;
      next = index_[came_from] + 1;
    }
  }

 private:
  bool is_slack_row(std::size_t r) const {
    const std::size_t v = t_.basic_var(r);
    return v >= d_ && v < d_ + m_;
  }

  void pivot(std::size_t row, std::size_t var) {
    check_cancelled(stop_);
    t_.pivot(row, var);
  }

  // Lexicographic minimum ratio over rows with a positive entry in `var`.
  std::optional<std::size_t> lex_ratio_row(std::size_t var) const {
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < t_.rows(); ++r) {
      if (!is_slack_row(r) || t_.entry(r, var) <= 0) continue;
      if (!best || lex_less(r, *best, var)) best = r;
    }
    return best;
  }

  bool lex_less(std::size_t r, std::size_t s, std::size_t var) const {
    const BigInt& pr = t_.entry(r, var);
    const BigInt& ps = t_.entry(s, var);
    const BigInt a = t_.rhs(r) * ps;
    const BigInt b = t_.rhs(s) * pr;
    if (a != b) return a < b;
    for (std::size_t k : order_) {
      const BigInt x = t_.entry(r, d_ + k) * ps;
      const BigInt y = t_.entry(s, d_ + k) * pr;
      if (x != y) return x < y;
    }
    return false;
  }

  // The simplex step towards the root: (entering slack, leaving row).
  std::optional<std::pair<std::size_t, std::size_t>> select() const {
    for (std::size_t k : order_) {
      if (t_.is_basic(d_ + k) || t_.entry(wrow_, d_ + k) >= 0) continue;
      const auto r = lex_ratio_row(d_ + k);
      if (!r) throw std::logic_error("vertex enumeration: unbounded objective");
      return std::make_pair(k, *r);
    }
    return std::nullopt;
  }

  // Pivots to the child reached by entering slack k if that child's parent
  // is the current basis; otherwise leaves the tableau unchanged.
  bool reverse(std::size_t k) {
    const std::size_t var = d_ + k;
    if (t_.entry(wrow_, var) <= 0) return false;
    const auto r = lex_ratio_row(var);
    if (!r) return false;
    const std::size_t leaving = t_.basic_var(*r) - d_;
    pivot(*r, var);
    const auto back = select();
    if (back && back->first == leaving && t_.basic_var(back->second) == var) return true;
    pivot(*t_.row_of(var), d_ + leaving);
    return false;
  }

  bool lexmin() const {
    for (std::size_t r = 0; r < t_.rows(); ++r) {
      if (!is_slack_row(r) || t_.rhs(r) != 0) continue;
      const std::size_t own = index_[t_.basic_var(r) - d_];
      for (std::size_t i = 0; i < own; ++i) {
        const std::size_t k = order_[i];
        if (!t_.is_basic(d_ + k) && t_.entry(r, d_ + k) != 0) return false;
      }
    }
    return true;
  }

  void emit() {
    LabeledVertex v;
    for (std::size_t j = 0; j < d_; ++j) v.coords.push_back(t_.value(j));
    std::set<std::size_t> labels(eq_labels_.begin(), eq_labels_.end());
    for (std::size_t k = 0; k < m_; ++k) {
      const auto r = t_.row_of(d_ + k);
      if (!r) v.cobasis.push_back(k);
      if (!r || t_.rhs(*r) == 0) {
        v.tight.push_back(k);
        if (poly_.inequalities[k].label) labels.insert(*poly_.inequalities[k].label);
      }
    }
    v.labels.assign(labels.begin(), labels.end());
    sink_(v);
  }

  const HPolyhedron& poly_;
  const VertexSink& sink_;
  const std::stop_token& stop_;
  std::size_t d_;
  std::size_t m_;
  std::vector<std::size_t> order_;  // slack with lexicographic index i
  std::vector<std::size_t> index_;  // inverse of order_
  std::vector<std::size_t> eq_labels_;
  IntegerTableau t_;
  std::size_t wrow_ = 0;
};

void check_shape(const HPolyhedron& poly) {
  const auto check = [&](const Constraint& c) {
    if (c.coeffs.size() != poly.dim) throw GameError("constraint has the wrong number of coefficients");
  };
  for (const auto& c : poly.inequalities) check(c);
  for (const auto& c : poly.equations) check(c);
}

}  // namespace

bool enumerate_vertices(const HPolyhedron& poly, const VertexSink& sink, std::stop_token stop) {
  check_shape(poly);
  const auto keep = independent_equations(poly.equations, poly.dim);
  if (!keep) return false;
  std::vector<Constraint> eqs;
  for (auto e : *keep) eqs.push_back(poly.equations[e]);
  const auto root = feasible_basis(poly, eqs, stop);
  if (!root) return false;
  ReverseSearch search(poly, eqs, *root, sink, stop);
  search.run();
  return true;
}

std::vector<LabeledVertex> vertices(const HPolyhedron& poly, std::stop_token stop) {
  std::vector<LabeledVertex> out;
  enumerate_vertices(poly, [&](const LabeledVertex& v) { out.push_back(v); }, stop);
  return out;
}

HPolyhedron face(const HPolyhedron& poly, const std::vector<std::size_t>& labels) {
  HPolyhedron f;
  f.dim = poly.dim;
  f.var_names = poly.var_names;
  f.equations = poly.equations;
  for (const auto& c : poly.inequalities) {
    if (c.label && std::find(labels.begin(), labels.end(), *c.label) != labels.end()) {
      f.equations.push_back(c);
    } else {
      f.inequalities.push_back(c);
    }
  }
  return f;
}

std::vector<LabeledVertex> face_vertices(const HPolyhedron& poly, const std::vector<std::size_t>& labels,
                                         std::stop_token stop) {
  return vertices(face(poly, labels), stop);
}

BestResponsePolyhedra build_best_response_polyhedra(const BimatrixGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  BestResponsePolyhedra out;

  HPolyhedron& p = out.p;
  p.dim = m + 1;
  for (std::size_t i = 0; i < m; ++i) p.var_names.push_back("x" + std::to_string(i + 1));
  p.var_names.push_back("v");
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector c(m + 1);
    c[i] = Rational(-1);
    p.inequalities.push_back({c, Rational(), i});
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector c(m + 1);
    for (std::size_t i = 0; i < m; ++i) c[i] = game.b()[i][j];
    c[m] = Rational(-1);
    p.inequalities.push_back({c, Rational(), m + j});
  }
  RationalVector px(m + 1, Rational(1));
  px[m] = Rational();
  p.equations.push_back({px, Rational(1), std::nullopt});

  HPolyhedron& q = out.q;
  q.dim = n + 1;
  for (std::size_t j = 0; j < n; ++j) q.var_names.push_back("y" + std::to_string(j + 1));
  q.var_names.push_back("u");
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector c(n + 1);
    for (std::size_t j = 0; j < n; ++j) c[j] = game.a()[i][j];
    c[n] = Rational(-1);
    q.inequalities.push_back({c, Rational(), i});
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector c(n + 1);
    c[j] = Rational(-1);
    q.inequalities.push_back({c, Rational(), m + j});
  }
  RationalVector qy(n + 1, Rational(1));
  qy[n] = Rational();
  q.equations.push_back({qy, Rational(1), std::nullopt});
  return out;
}

}  // namespace nash
