#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nash/bimatrix.hpp"
#include "nash/rational.hpp"

namespace nash {

using NodeId = std::size_t;
using InfosetId = std::size_t;

enum class OwnerKind { Unassigned, Player, Chance };

/// Who moves at a nonterminal node.  `player` is a zero-based index.
struct Owner {
  OwnerKind kind = OwnerKind::Unassigned;
  std::size_t player = 0;

  static Owner personal(std::size_t player) { return {OwnerKind::Player, player}; }
  static Owner chance() { return {OwnerKind::Chance, 0}; }
  friend bool operator==(const Owner&, const Owner&) = default;
};

struct Node {
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  Owner owner;
  std::optional<InfosetId> infoset;  // set iff owner is a player
  RationalVector chance_probs;        // one per child iff owner is chance
  RationalVector payoffs;             // one per player iff leaf
};

struct InformationSet {
  std::size_t player = 0;
  std::vector<NodeId> members;
  std::vector<std::string> moves;
};

/// One (information set, move index) step of a player's own history.
struct OwnMove {
  InfosetId infoset;
  std::size_t move;
  friend auto operator<=>(const OwnMove&, const OwnMove&) = default;
};
using OwnSequence = std::vector<OwnMove>;

/// Pure strategy that leaves moves at own-unreachable information sets
/// unspecified.  `choices` follows infosets_of(player) order.
struct ReducedStrategy {
  std::vector<std::optional<std::size_t>> choices;
  std::string name;
  friend bool operator==(const ReducedStrategy&, const ReducedStrategy&) = default;
};

// Edit actions, applied with GameTree::apply.
struct AddChildren { NodeId node; std::size_t count = 2; };
struct AddChild { NodeId node; };
struct DeleteSubtree { NodeId node; };
struct AssignOwner { NodeId node; Owner owner; };
struct MergeInfosets { InfosetId first; InfosetId second; };
struct DissolveInfoset { InfosetId infoset; };
struct CutInfoset { InfosetId infoset; std::size_t boundary; };
struct SetMoveNames { std::size_t player; std::vector<std::string> labels; };
struct SetChanceProb { NodeId node; std::size_t child; Rational prob; };
struct SetPayoffs { std::size_t player; RationalVector payoffs; };
struct SetPayoff { NodeId leaf; std::size_t player; Rational payoff; };
using EditAction = std::variant<AddChildren, AddChild, DeleteSubtree, AssignOwner, MergeInfosets,
                                DissolveInfoset, CutInfoset, SetMoveNames, SetChanceProb, SetPayoffs,
                                SetPayoff>;

/// Extensive game.  Nodes and information sets live in arenas whose ids stay
/// valid across edits until the node or set is removed; removed ids are
/// reused.
class GameTree {
 public:
  /// A single root node and the default players "1" and "2".
  explicit GameTree(std::vector<std::string> players = {"1", "2"});
  /// A root with two leaf children.
  static GameTree starting_tree();

  NodeId root() const { return root_; }
  const Node& node(NodeId id) const;
  bool is_leaf(NodeId id) const { return node(id).children.empty(); }
  bool contains(NodeId id) const { return id < nodes_.size() && nodes_[id].has_value(); }
  const InformationSet& infoset(InfosetId id) const;
  bool has_infoset(InfosetId id) const { return id < infosets_.size() && infosets_[id].has_value(); }

  std::size_t player_count() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  void rename_player(std::size_t player, std::string name);

  /// Free-form display settings (orientation, fonts, ...), kept in order.
  std::vector<std::pair<std::string, std::string>>& settings() { return settings_; }
  const std::vector<std::pair<std::string, std::string>>& settings() const { return settings_; }

  // --- edits -------------------------------------------------------------
  void apply(const EditAction& action);

  /// Turns a leaf into a node with `count` new leaf children.
  void add_children(NodeId leaf, std::size_t count = 2);
  /// Appends one leaf child to a nonterminal node.
  NodeId add_child(NodeId node);
  void delete_subtree(NodeId node);
  void assign_owner(NodeId node, Owner owner);
  /// Merges two information sets of the same player whose nodes have equal
  /// numbers of children.  Returns the id of the merged set (`first`).
  InfosetId merge_infosets(InfosetId first, InfosetId second);
  /// Splits a set into singletons; the first member keeps the move names,
  /// the others get fresh default names.
  void dissolve_infoset(InfosetId id);
  /// Splits members [0, boundary) and [boundary, end).  Returns the new set.
  InfosetId cut_infoset(InfosetId id, std::size_t boundary);
  /// Renames all moves of a player; labels run over infosets_of(player).
  void set_move_names(std::size_t player, const std::vector<std::string>& labels);
  void set_move_name(InfosetId id, std::size_t move, std::string label);
  /// Reassigns default move names to every information set, breadth first.
  void reset_move_names();
  /// With exactly two children the sibling receives 1 - p; otherwise the
  /// remaining siblings are rescaled to keep the total at one.
  void set_chance_prob(NodeId node, std::size_t child, const Rational& prob);
  /// Replaces all probabilities of a chance node; they must sum to one.
  void set_chance_probs(NodeId node, const RationalVector& probs);
  void set_payoffs(std::size_t player, const RationalVector& payoffs);
  void set_payoff(NodeId leaf, std::size_t player, const Rational& payoff);
  /// Leaf k (left to right) gets payoff k for every player.
  void default_payoffs();

  // --- queries -----------------------------------------------------------
  /// Leaves in left-to-right order.
  std::vector<NodeId> leaves() const;
  /// Nodes in breadth-first order.
  std::vector<NodeId> bfs_order() const;
  /// A player's information sets in breadth-first first-visit order.
  std::vector<InfosetId> infosets_of(std::size_t player) const;
  /// All information sets in breadth-first first-visit order.
  std::vector<InfosetId> all_infosets() const;
  /// Edge label: the move name for personal moves, the probability for chance.
  std::string move_label(NodeId node, std::size_t child) const;
  std::size_t child_index(NodeId child) const;

  OwnSequence own_sequence(NodeId node, std::size_t player) const;
  bool check_perfect_recall(std::size_t player) const;

  /// Throws GameError unless every nonterminal node has an owner.
  void validate_complete() const;

  std::vector<ReducedStrategy> reduced_strategies(std::size_t player) const;
  /// Product of move counts over the player's information sets.
  BigInt full_strategy_count(std::size_t player) const;

  /// Expected payoffs to all players for a profile of reduced strategies.
  RationalVector expected_payoffs(const std::vector<const ReducedStrategy*>& profile) const;

  /// Reduced strategic form of a two-player tree.
  BimatrixGame to_strategic_form() const;

 private:
  NodeId new_node(std::optional<NodeId> parent);
  InfosetId new_infoset(std::size_t player, std::vector<NodeId> members, std::vector<std::string> moves);
  void release_infoset(InfosetId id);
  void detach_from_infoset(NodeId id);
  std::string fresh_move_name(std::size_t player, std::vector<std::string>& taken) const;
  std::vector<std::string> fresh_move_names(std::size_t player, std::size_t count) const;
  void check_player(std::size_t player) const;
  Node& mut(NodeId id);
  InformationSet& mut_infoset(InfosetId id);

  std::vector<std::optional<Node>> nodes_;
  std::vector<NodeId> free_nodes_;
  std::vector<std::optional<InformationSet>> infosets_;
  std::vector<InfosetId> free_infosets_;
  NodeId root_ = 0;
  std::vector<std::string> players_;
  std::vector<std::pair<std::string, std::string>> settings_;
};

/// Default move names: upper-case letters for the first player, lower-case
/// for the others, doubled after the alphabet is used up.
std::string default_move_name(std::size_t player, std::size_t index);

/// Same game up to node and information-set numbering.
bool structurally_equal(const GameTree& a, const GameTree& b);

}  // namespace nash
