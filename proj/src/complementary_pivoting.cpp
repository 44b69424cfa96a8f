#include "nash/complementary_pivoting.hpp"

#include <stdexcept>

#include "nash/cancel.hpp"

namespace nash {

PivotPath follow_path(const ComplementarySystem& sys, std::size_t first, const std::function<bool(std::size_t)>& done,
                      std::stop_token stop) {
  PivotPath path{IntegerTableau::from_rational_set(sys.coeffs, sys.rhs, sys.start_basis), 0};
  IntegerTableau& t = path.tableau;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (!sys.free[t.basic_var(r)] && t.rhs(r) < 0) throw std::invalid_argument("complementary pivoting: infeasible start");
  }

  const auto lex_less = [&](std::size_t r, std::size_t s, std::size_t var) {
    const BigInt& pr = t.entry(r, var);
    const BigInt& ps = t.entry(s, var);
    const BigInt a = t.rhs(r) * ps;
    const BigInt b = t.rhs(s) * pr;
    if (a != b) return a < b;
    for (std::size_t v : sys.start_basis) {
      const BigInt x = t.entry(r, v) * ps;
      const BigInt y = t.entry(s, v) * pr;
      if (x != y) return x < y;
    }
    return false;
  };

  std::size_t entering = first;
  for (;;) {
    check_cancelled(stop);
    std::optional<std::size_t> row;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (sys.free[t.basic_var(r)] || t.entry(r, entering) <= 0) continue;
      if (!row || lex_less(r, *row, entering)) row = r;
    }
    if (!row) throw std::logic_error("complementary pivoting ended on a ray");
    const std::size_t leaving = t.basic_var(*row);
    t.pivot(*row, entering);
    ++path.pivots;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (!sys.free[t.basic_var(r)] && t.rhs(r) < 0) throw std::logic_error("complementary pivoting lost feasibility");
    }
    if (done(leaving)) return path;
    if (!sys.complement[leaving]) throw std::logic_error("complementary pivoting: leaving variable has no complement");
    entering = *sys.complement[leaving];
  }
}

}  // namespace nash
