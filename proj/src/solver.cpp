#include "nash/solver.hpp"

#include <cctype>
#include <random>
#include <sstream>

#include "nash/sequence_form.hpp"
#include "nash/tree_xml.hpp"

namespace nash {
namespace {

std::vector<RationalVector> parse_prior(const std::string& text) {
  std::vector<RationalVector> parts(1);
  std::string token;
  const auto flush = [&] {
    if (!token.empty()) parts.back().push_back(Rational::parse(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ';') {
      flush();
      parts.emplace_back();
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (parts.size() != 2) throw ParseError("prior must have the form 'x1 x2 ... ; y1 y2 ...'");
  return parts;
}

BehaviorStrategy behavior_from(const GameTree& tree, std::size_t player, const RationalVector& flat) {
  BehaviorStrategy beh{player, tree.infosets_of(player), {}};
  std::size_t k = 0;
  for (InfosetId h : beh.infosets) {
    RationalVector local;
    for (std::size_t c = 0; c < tree.infoset(h).moves.size(); ++c) {
      if (k == flat.size()) throw GameError("prior has too few move probabilities");
      local.push_back(flat[k++]);
    }
    if (!MixedStrategy{Player::One, local}.is_valid()) {
      throw GameError("prior probabilities at an information set must be nonnegative and sum to one");
    }
    beh.probs.push_back(std::move(local));
  }
  if (k != flat.size()) throw GameError("prior has too many move probabilities");
  return beh;
}

SolveResult solve_sequence(const GameTree& tree, const SolveOptions& options) {
  const SequenceForm sf = build_sequence_form(tree);
  BehaviorStrategy b1 = uniform_behavior(tree, 0);
  BehaviorStrategy b2 = uniform_behavior(tree, 1);
  if (options.prior) {
    const auto parts = parse_prior(*options.prior);
    b1 = behavior_from(tree, 0, parts[0]);
    b2 = behavior_from(tree, 1, parts[1]);
  } else if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    b1 = random_behavior(tree, 0, rng);
    b2 = random_behavior(tree, 1, rng);
  }
  const auto eq = lemke_prior(tree, sf, behavior_to_realization(tree, sf.p1, b1),
                              behavior_to_realization(tree, sf.p2, b2), options.stop);
  SolveResult result;
  result.report = render_behavior_equilibrium(tree, eq, options.mode);
  result.behavior = eq;
  return result;
}

}  // namespace

const BimatrixGame& LoadedGame::strategic_form() {
  if (!strategic) {
    if (!tree) throw GameError("no game loaded");
    strategic = tree->to_strategic_form();
  }
  return *strategic;
}

LoadedGame load_game(std::string_view text, InputFormat format, bool zero_sum, bool symmetric) {
  if (format == InputFormat::Auto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    format = first != std::string_view::npos && text[first] == '<' ? InputFormat::Xml : InputFormat::Matrix;
  }
  LoadedGame game;
  if (format == InputFormat::Xml) {
    if (zero_sum || symmetric) throw GameError("zero-sum and symmetric modes apply to matrix input only");
    XmlGame xml = read_xml(text);
    game.tree = std::move(xml.tree);
    game.strategic = std::move(xml.strategic);
    if (game.tree && game.tree->player_count() != 2 && !game.strategic) {
      throw UnsupportedGame("only two-player games can be solved");
    }
  } else {
    game.strategic = parse_bimatrix(text, zero_sum, symmetric);
  }
  return game;
}

std::size_t find_label(const BimatrixGame& game, std::string_view name) {
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (game.row_names()[i] == name) return i;
  }
  for (std::size_t j = 0; j < game.cols(); ++j) {
    if (game.col_names()[j] == name) return game.rows() + j;
  }
  throw GameError("unknown strategy label '" + std::string(name) + "'");
}

SolveResult solve_game(LoadedGame& game, const SolveOptions& options) {
  if (options.prior && options.seed) throw GameError("give either a prior or a seed, not both");
  if (options.algorithm == Algorithm::Lemke && game.tree && options.sequence_form) {
    return solve_sequence(*game.tree, options);
  }
  const BimatrixGame& g = game.strategic_form();
  SolveResult result;
  switch (options.algorithm) {
    case Algorithm::Enumerate: {
      result.equilibria = enumerate_extreme_equilibria(g, {options.workers, options.stop});
      result.components = connected_components(result.equilibria);
      result.report = render_equilibria(g, result.equilibria, &result.components, options.mode);
      return result;
    }
    case Algorithm::LemkeHowson: {
      const std::size_t label = options.label ? find_label(g, *options.label) : 0;
      const auto eq = lemke_howson(g, label, options.stop);
      result.equilibria = {as_extreme(eq)};
      result.report = render_equilibrium(g, eq, options.mode);
      return result;
    }
    case Algorithm::Lemke: {
      RationalVector x = MixedStrategy::uniform(Player::One, g.rows()).probs;
      RationalVector y = MixedStrategy::uniform(Player::Two, g.cols()).probs;
      if (options.prior) {
        auto parts = parse_prior(*options.prior);
        x = std::move(parts[0]);
        y = std::move(parts[1]);
      } else if (options.seed) {
        std::mt19937_64 rng(*options.seed);
        x = random_simplex_point(g.rows(), rng);
        y = random_simplex_point(g.cols(), rng);
      }
      const auto eq = lemke_prior(g, x, y, options.stop);
      result.equilibria = {as_extreme(eq)};
      result.report = render_equilibrium(g, eq, options.mode);
      return result;
    }
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace nash
