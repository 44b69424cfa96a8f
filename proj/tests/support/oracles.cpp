#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = Rational(1) / m[row][c];
    for (auto& e : m[row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t max_size, F&& f) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    f(pick);
    if (pick.size() == max_size) return;
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

Rational inner(const RationalVector& a, const RationalVector& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct PlayerVertex {
  RationalVector point;
  std::set<std::size_t> labels;
};

// Vertices of one player's best-response polyhedron.  `pay[k][j]` is the
// payoff of opponent strategy j against own strategy k; own strategy k
// carries label own_offset + k, opponent strategy j carries other_offset + j.
std::vector<PlayerVertex> support_vertices(const RationalMatrix& pay, std::size_t own_offset,
                                           std::size_t other_offset) {
  const std::size_t k = pay.size();
  const std::size_t n = pay.front().size();
  std::map<RationalVector, std::set<std::size_t>> found;
  for (std::size_t zeros = 0; zeros < (std::size_t{1} << k); ++zeros) {
    if (zeros == (std::size_t{1} << k) - 1) continue;
    for (std::size_t best = 1; best < (std::size_t{1} << n); ++best) {
      // unknowns: point (k), value (1)
      RationalMatrix m;
      RationalVector r;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(zeros >> i & 1)) continue;
        RationalVector row(k + 1);
        row[i] = 1;
        m.push_back(row);
        r.push_back(0);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!(best >> j & 1)) continue;
        RationalVector row(k + 1);
        for (std::size_t i = 0; i < k; ++i) row[i] = pay[i][j];
        row[k] = -1;
        m.push_back(row);
        r.push_back(0);
      }
      RationalVector ones(k + 1, Rational(1));
      ones[k] = 0;
      m.push_back(ones);
      r.push_back(1);
      const auto z = solve_unique(m, r);
      if (!z) continue;
      RationalVector point(z->begin(), z->begin() + static_cast<long>(k));
      const Rational value = (*z)[k];
      bool ok = std::all_of(point.begin(), point.end(), [](const Rational& e) { return e.sign() >= 0; });
      std::set<std::size_t> labels;
      for (std::size_t j = 0; ok && j < n; ++j) {
        Rational pj;
        for (std::size_t i = 0; i < k; ++i) pj += point[i] * pay[i][j];
        if (pj > value) ok = false;
        if (pj == value) labels.insert(other_offset + j);
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < k; ++i) {
        if (point[i].is_zero()) labels.insert(own_offset + i);
      }
      found[point] = labels;
    }
  }
  std::vector<PlayerVertex> out;
  for (auto& [p, l] : found) out.push_back({p, l});
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t(a.front().size(), RationalVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

}  // namespace

std::optional<RationalVector> solve_unique(RationalMatrix m, RationalVector r) {
  if (m.empty()) return std::nullopt;
  const std::size_t cols = m.front().size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(r[i]);
  const auto pivots = rref(m, cols);
  for (std::size_t i = pivots.size(); i < m.size(); ++i) {
    if (!m[i][cols].is_zero()) return std::nullopt;
  }
  if (pivots.size() != cols) return std::nullopt;
  RationalVector z(cols);
  for (std::size_t i = 0; i < cols; ++i) z[pivots[i]] = m[i][cols];
  return z;
}

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).size();
}

std::vector<Vertex> brute_force_vertices(const nash::HPolyhedron& poly) {
  const std::size_t d = poly.dim;
  std::map<RationalVector, std::set<std::size_t>> found;
  for_each_subset(poly.inequalities.size(), d, [&](const std::vector<std::size_t>& pick) {
    RationalMatrix m;
    RationalVector r;
    for (const auto& e : poly.equations) {
      m.push_back(e.coeffs);
      r.push_back(e.rhs);
    }
    for (std::size_t i : pick) {
      m.push_back(poly.inequalities[i].coeffs);
      r.push_back(poly.inequalities[i].rhs);
    }
    if (m.empty()) return;
    const auto z = solve_unique(m, r);
    if (!z) return;
    std::set<std::size_t> labels;
    for (const auto& e : poly.equations) {
      if (e.label) labels.insert(*e.label);
    }
    for (const auto& c : poly.inequalities) {
      const Rational lhs = inner(c.coeffs, *z);
      if (lhs > c.rhs) return;
      if (lhs == c.rhs && c.label) labels.insert(*c.label);
    }
    found[*z] = labels;
  });
  std::vector<Vertex> out;
  for (auto& [p, l] : found) out.push_back({p, {l.begin(), l.end()}});
  return out;
}

std::set<Profile> support_enumeration(const nash::BimatrixGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  const auto xs = support_vertices(game.b(), 0, m);
  const auto ys = support_vertices(transpose(game.a()), m, 0);
  std::set<Profile> out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      std::set<std::size_t> all = x.labels;
      all.insert(y.labels.begin(), y.labels.end());
      if (all.size() == m + n) out.insert({x.point, y.point});
    }
  }
  return out;
}

std::set<Profile> as_profiles(const std::vector<nash::ExtremeEquilibrium>& eqs) {
  std::set<Profile> out;
  for (const auto& e : eqs) out.insert({e.x.probs, e.y.probs});
  return out;
}

std::vector<nash::Clique> brute_force_cliques(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::set<std::pair<std::size_t, std::size_t>> es(edges.begin(), edges.end());
  std::set<std::size_t> left;
  std::set<std::size_t> right;
  for (const auto& [a, b] : es) {
    left.insert(a);
    right.insert(b);
  }
  const bool flip = left.size() > right.size();
  const std::vector<std::size_t> small = flip ? std::vector<std::size_t>(right.begin(), right.end())
                                              : std::vector<std::size_t>(left.begin(), left.end());
  const std::vector<std::size_t> big = flip ? std::vector<std::size_t>(left.begin(), left.end())
                                            : std::vector<std::size_t>(right.begin(), right.end());
  if (small.size() > 20) throw std::length_error("brute_force_cliques: graph too large");
  auto adjacent = [&](std::size_t s, std::size_t b) {
    return flip ? es.count({b, s}) > 0 : es.count({s, b}) > 0;
  };
  std::set<nash::Clique> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << small.size()); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (mask >> i & 1) s.push_back(small[i]);
    }
    std::vector<std::size_t> common;
    for (std::size_t b : big) {
      if (std::all_of(s.begin(), s.end(), [&](std::size_t a) { return adjacent(a, b); })) common.push_back(b);
    }
    if (common.empty()) continue;
    // maximal iff no other small vertex is adjacent to all of common
    std::vector<std::size_t> closure;
    for (std::size_t a : small) {
      if (std::all_of(common.begin(), common.end(), [&](std::size_t b) { return adjacent(a, b); })) {
        closure.push_back(a);
      }
    }
    if (closure != s) continue;
    out.insert(flip ? nash::Clique{common, s} : nash::Clique{s, common});
  }
  return {out.begin(), out.end()};
}

std::vector<std::set<std::pair<std::size_t, std::size_t>>> edge_components(
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> comps;
  std::vector<bool> seen(edges.size(), false);
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (seen[s]) continue;
    std::set<std::pair<std::size_t, std::size_t>> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto e = edges[stack.back()];
      stack.pop_back();
      comp.insert(e);
      for (std::size_t t = 0; t < edges.size(); ++t) {
        if (!seen[t] && (edges[t].first == e.first || edges[t].second == e.second)) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    comps.push_back(comp);
  }
  return comps;
}

bool in_convex_hull(const RationalVector& p, const std::vector<RationalVector>& points) {
  const std::set<RationalVector> unique(points.begin(), points.end());
  const std::vector<RationalVector> pts(unique.begin(), unique.end());
  if (unique.count(p)) return true;
  const std::size_t dim = p.size();
  bool hit = false;
  for_each_subset(pts.size(), dim + 1, [&](const std::vector<std::size_t>& pick) {
    if (hit || pick.size() < 2) return;
    RationalMatrix m(dim + 1, RationalVector(pick.size()));
    RationalVector r(p);
    r.push_back(1);
    for (std::size_t k = 0; k < pick.size(); ++k) {
      for (std::size_t i = 0; i < dim; ++i) m[i][k] = pts[pick[k]][i];
      m[dim][k] = 1;
    }
    const auto lambda = solve_unique(m, r);
    if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return l.sign() >= 0; })) {
      hit = true;
    }
  });
  return hit;
}

bool in_some_clique(const RationalVector& x, const RationalVector& y,
                    const std::vector<nash::ExtremeEquilibrium>& eqs,
                    const std::vector<nash::Component>& components) {
  std::map<std::size_t, RationalVector> xs;
  std::map<std::size_t, RationalVector> ys;
  for (const auto& e : eqs) {
    xs[e.idx1] = e.x.probs;
    ys[e.idx2] = e.y.probs;
  }
  for (const auto& comp : components) {
    for (const auto& c : comp.cliques) {
      std::vector<RationalVector> us;
      std::vector<RationalVector> vs;
      for (std::size_t u : c.u) us.push_back(xs.at(u));
      for (std::size_t v : c.v) vs.push_back(ys.at(v));
      if (in_convex_hull(x, us) && in_convex_hull(y, vs)) return true;
    }
  }
  return false;
}

namespace {

std::vector<std::size_t> parse_id_set(const std::string& text) {
  std::vector<std::size_t> ids;
  std::string t = text;
  for (char& c : t) {
    if (c == '{' || c == '}' || c == ',') c = ' ';
  }
  std::istringstream in(t);
  std::size_t id;
  while (in >> id) ids.push_back(id);
  return ids;
}

std::size_t parse_paren(const std::string& tok) {
  if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')') throw std::runtime_error("bad id " + tok);
  return std::stoul(tok.substr(1, tok.size() - 2));
}

}  // namespace

ParsedReport parse_report(const std::string& text) {
  ParsedReport rep;
  std::istringstream in(text);
  std::string line;
  enum { None, Rat, Comp } section = None;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(' ');
    const std::string trimmed = first == std::string::npos ? "" : line.substr(first);
    if (trimmed.empty()) {
      if (section == Rat) section = None;
      continue;
    }
    if (trimmed.rfind("Rational:", 0) == 0) {
      section = Rat;
      continue;
    }
    if (trimmed.rfind("Decimal:", 0) == 0) {
      section = None;
      continue;
    }
    if (trimmed.rfind("Connected component", 0) == 0) {
      rep.components.emplace_back();
      section = Comp;
      continue;
    }
    if (section == Rat && trimmed.rfind("EE", 0) == 0) {
      std::istringstream tl(trimmed);
      std::vector<std::string> toks;
      std::string tok;
      while (tl >> tok) toks.push_back(tok);
      ReportLine r;
      std::size_t i = 3;
      r.idx1 = parse_paren(toks.at(i++));
      while (toks.at(i) != "EP=") r.x.push_back(Rational::parse(toks[i++]));
      r.u = Rational::parse(toks.at(++i));
      i += 2;  // value, "P2:"
      r.idx2 = parse_paren(toks.at(i++));
      while (toks.at(i) != "EP=") r.y.push_back(Rational::parse(toks[i++]));
      r.v = Rational::parse(toks.at(++i));
      rep.lines.push_back(r);
      continue;
    }
    if (section == Comp) {
      const auto x = trimmed.find("  x  ");
      if (x == std::string::npos) throw std::runtime_error("bad clique line: " + trimmed);
      rep.components.back().push_back({parse_id_set(trimmed.substr(0, x)), parse_id_set(trimmed.substr(x + 5))});
    }
  }
  return rep;
}

namespace {

ComponentShape shape_of(const std::map<std::size_t, RationalVector>& xs, const std::map<std::size_t, RationalVector>& ys,
                        const std::vector<std::vector<nash::Clique>>& comps) {
  ComponentShape out;
  for (const auto& comp : comps) {
    std::set<CliqueShape> cs;
    for (const auto& c : comp) {
      CliqueShape shape;
      for (std::size_t u : c.u) shape.first.insert(xs.at(u));
      for (std::size_t v : c.v) shape.second.insert(ys.at(v));
      cs.insert(shape);
    }
    out.insert(cs);
  }
  return out;
}

}  // namespace

ComponentShape shape(const std::vector<nash::ExtremeEquilibrium>& eqs, const std::vector<nash::Component>& comps) {
  std::map<std::size_t, RationalVector> xs;
  std::map<std::size_t, RationalVector> ys;
  for (const auto& e : eqs) {
    xs[e.idx1] = e.x.probs;
    ys[e.idx2] = e.y.probs;
  }
  std::vector<std::vector<nash::Clique>> cl;
  for (const auto& c : comps) cl.push_back(c.cliques);
  return shape_of(xs, ys, cl);
}

ComponentShape shape(const ParsedReport& report) {
  std::map<std::size_t, RationalVector> xs;
  std::map<std::size_t, RationalVector> ys;
  for (const auto& l : report.lines) {
    xs[l.idx1] = l.x;
    ys[l.idx2] = l.y;
  }
  return shape_of(xs, ys, report.components);
}

std::set<Profile> as_profiles(const ParsedReport& report) {
  std::set<Profile> out;
  for (const auto& l : report.lines) out.insert({l.x, l.y});
  return out;
}

bool is_nash(const nash::BimatrixGame& game, const RationalVector& x, const RationalVector& y) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  if (x.size() != m || y.size() != n) return false;
  for (const auto* s : {&x, &y}) {
    Rational total;
    for (const auto& e : *s) {
      if (e.sign() < 0) return false;
      total += e;
    }
    if (total != 1) return false;
  }
  Rational u;
  Rational v;
  std::vector<Rational> rows(m);
  std::vector<Rational> cols(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i] += game.a()[i][j] * y[j];
      cols[j] += game.b()[i][j] * x[i];
      u += x[i] * game.a()[i][j] * y[j];
      v += x[i] * game.b()[i][j] * y[j];
    }
  }
  return std::all_of(rows.begin(), rows.end(), [&](const Rational& r) { return r <= u; }) &&
         std::all_of(cols.begin(), cols.end(), [&](const Rational& c) { return c <= v; });
}

}  // namespace oracle
