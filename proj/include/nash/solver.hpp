#pragma once

#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>

#include "nash/components.hpp"
#include "nash/enumeration.hpp"
#include "nash/game_tree.hpp"
#include "nash/path_follow.hpp"
#include "nash/report.hpp"

namespace nash {

enum class InputFormat { Auto, Xml, Matrix };
enum class Algorithm { Enumerate, LemkeHowson, Lemke };

/// A game as read from text.  Trees also carry their reduced strategic
/// form once it has been requested.
struct LoadedGame {
  std::optional<GameTree> tree;
  std::optional<BimatrixGame> strategic;

  /// The strategic form: the embedded one, or generated from the tree.
  const BimatrixGame& strategic_form();
};

/// Auto picks XML when the text starts with '<'.  Throws ParseError or
/// GameError for bad input.
LoadedGame load_game(std::string_view text, InputFormat format, bool zero_sum = false, bool symmetric = false);

struct SolveOptions {
  Algorithm algorithm = Algorithm::Enumerate;
  /// Lemke-Howson missing label: a strategy name, rows searched first.
  std::optional<std::string> label;
  /// Lemke prior: "x1 x2 ... ; y1 y2 ..." over strategies, or over the moves
  /// of each player's information sets for trees.
  std::optional<std::string> prior;
  std::optional<std::uint64_t> seed;
  RenderMode mode = RenderMode::Both;
  /// Trees are solved by Lemke on the sequence form unless this is false.
  bool sequence_form = true;
  std::size_t workers = 1;
  std::stop_token stop;
};

struct SolveResult {
  std::string report;
  std::vector<ExtremeEquilibrium> equilibria;
  std::vector<Component> components;
  std::optional<SequenceEquilibrium> behavior;
};

SolveResult solve_game(LoadedGame& game, const SolveOptions& options);

/// Index of the strategy called `name`: rows first, then columns offset by
/// the row count.
std::size_t find_label(const BimatrixGame& game, std::string_view name);

}  // namespace nash
