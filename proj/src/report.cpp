#include "nash/report.hpp"

#include <algorithm>
#include <sstream>

namespace nash {
namespace {

using Cells = std::vector<std::vector<std::string>>;

// Right-aligns every column; column 0 is left-aligned when `left_first`.
std::string align(const Cells& cells, bool left_first, const std::string& line_end = "") {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) line += ' ';
      const std::string pad(width[j] - row[j].size(), ' ');
      line += (j == 0 && left_first) ? row[j] + pad : pad + row[j];
    }
    out += line + line_end + "\n";
  }
  return out;
}

std::string render_value(const Rational& r, bool decimal) { return decimal ? render_decimal(r) : r.to_string(); }

std::string ee_lines(const std::vector<ExtremeEquilibrium>& eqs, bool decimal) {
  Cells cells;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const auto& e = eqs[k];
    std::vector<std::string> row{"EE", std::to_string(k + 1), "P1:", "(" + std::to_string(e.idx1) + ")"};
    for (const auto& p : e.x.probs) row.push_back(render_value(p, decimal));
    row.insert(row.end(), {"EP=", render_value(e.u, decimal), "P2:", "(" + std::to_string(e.idx2) + ")"});
    for (const auto& p : e.y.probs) row.push_back(render_value(p, decimal));
    row.insert(row.end(), {"EP=", render_value(e.v, decimal)});
    cells.push_back(std::move(row));
  }
  return align(cells, true, " ");
}

std::string id_set(const std::vector<std::size_t>& ids) {
  std::string s = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? ", " : "") + std::to_string(ids[k]);
  return s + "}";
}

}  // namespace

std::string render_decimal(const Rational& r) {
  if (r.is_zero()) return "0";
  // Round |r| * 10^4 half away from zero.
  const BigInt scaled_num = r.abs().numerator() * 10000;
  const BigInt& den = r.denominator();
  BigInt q = scaled_num / den;
  const BigInt rem = scaled_num - q * den;
  if (2 * rem >= den) q += 1;
  const BigInt whole = q / 10000;
  std::string frac = BigInt(q - whole * 10000).get_str();
  frac.insert(0, 4 - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  const std::string sign = r.sign() < 0 && q != 0 ? "-" : "";
  return sign + whole.get_str() + "." + frac;
}

std::string render_strategic_form(const BimatrixGame& game) {
  std::ostringstream out;
  out << "Strategic form: \n";
  for (int p = 0; p < 2; ++p) {
    if (p == 1) out << "\n";
    out << game.rows() << " x " << game.cols() << " Payoff player " << p + 1 << "\n\n";
    Cells cells;
    std::vector<std::string> header{""};
    header.insert(header.end(), game.col_names().begin(), game.col_names().end());
    cells.push_back(std::move(header));
    const auto& mat = p == 0 ? game.a() : game.b();
    for (std::size_t i = 0; i < game.rows(); ++i) {
      std::vector<std::string> row{game.row_names()[i]};
      for (const auto& v : mat[i]) row.push_back(v.to_string());
      cells.push_back(std::move(row));
    }
    out << align(cells, true);
  }
  return out.str();
}

std::string render_equilibria(const BimatrixGame& game, const std::vector<ExtremeEquilibrium>& eqs,
                              const std::vector<Component>* components, RenderMode mode) {
  std::ostringstream out;
  out << render_strategic_form(game) << "\n";
  out << "EE = Extreme Equilibrium, EP = Expected Payoffs\n";
  if (mode != RenderMode::Decimal) out << "\nRational:\n" << ee_lines(eqs, false);
  if (mode != RenderMode::Rational) out << "\nDecimal:\n" << ee_lines(eqs, true);
  if (components) {
    for (std::size_t c = 0; c < components->size(); ++c) {
      out << "\nConnected component " << c + 1 << ":\n";
      for (const auto& q : (*components)[c].cliques) out << id_set(q.u) << "  x  " << id_set(q.v) << "\n";
    }
  }
  return out.str();
}

ExtremeEquilibrium as_extreme(const MixedEquilibrium& eq) { return {eq.x, eq.y, eq.u, eq.v, 1, 1}; }

std::string render_equilibrium(const BimatrixGame& game, const MixedEquilibrium& eq, RenderMode mode) {
  return render_equilibria(game, {as_extreme(eq)}, nullptr, mode);
}

std::string render_behavior_equilibrium(const GameTree& tree, const SequenceEquilibrium& eq, RenderMode mode) {
  std::ostringstream out;
  out << "Behavior strategies, EP = Expected Payoffs\n";
  const auto block = [&](bool decimal) {
    Cells cells;
    for (const auto* beh : {&eq.b1, &eq.b2}) {
      std::vector<std::string> row{"P" + std::to_string(beh->player + 1) + ":"};
      for (std::size_t k = 0; k < beh->infosets.size(); ++k) {
        const auto& moves = tree.infoset(beh->infosets[k]).moves;
        for (std::size_t c = 0; c < moves.size(); ++c) {
          row.push_back(moves[c] + ":" + render_value(beh->probs[k][c], decimal));
        }
      }
      row.push_back("EP=");
      row.push_back(render_value(beh->player == 0 ? eq.u : eq.v, decimal));
      cells.push_back(std::move(row));
    }
    std::string text;
    for (const auto& row : cells) {
      std::string line;
      for (const auto& c : row) line += (line.empty() ? "" : " ") + c;
      text += line + "\n";
    }
    return text;
  };
  if (mode != RenderMode::Decimal) out << "\nRational:\n" << block(false);
  if (mode != RenderMode::Rational) out << "\nDecimal:\n" << block(true);
  return out.str();
}

}  // namespace nash
