#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nash/bimatrix.hpp"
#include "nash/game_tree.hpp"

namespace nash {

/// Contents of a game file: a tree, a strategic-form payload, or both.
struct XmlGame {
  std::vector<std::string> players;
  std::optional<GameTree> tree;
  std::optional<BimatrixGame> strategic;
};

/// Serializes a tree, optionally with an embedded strategic form.  Leaves are
/// written as
///
///   <outcome move="T">
///      <payoff player="1">1</payoff>
///      <payoff player="2">3</payoff>
///   </outcome>
///
/// with three spaces of indentation per level.
std::string to_xml(const GameTree& tree, const BimatrixGame* strategic = nullptr);
/// A file holding only a strategic form.
std::string to_xml(const BimatrixGame& game);

/// Throws ParseError for malformed XML, unknown elements or bad payoffs.
XmlGame read_xml(std::string_view text);
/// Like read_xml but requires a tree.
GameTree from_xml(std::string_view text);

}  // namespace nash
