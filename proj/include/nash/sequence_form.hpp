#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nash/game_tree.hpp"
#include "nash/rational.hpp"

namespace nash {

/// A sequence of own moves, identified by its last move.  The empty sequence
/// has no infoset.
struct Sequence {
  std::optional<InfosetId> infoset;
  std::size_t move = 0;
  OwnSequence path;
  std::string name;  // concatenated move labels, "∅" for the empty sequence
};

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  Rational value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sequences and realization constraints of one player.  Sequences that
/// reach no leaf and lead to exactly one own information set are substituted
/// by the sum of their extensions, so constraint rows exist for the empty
/// sequence and for every information set whose preceding sequence is kept.
struct PlayerSequences {
  std::size_t player = 0;
  std::vector<Sequence> seqs;
  std::vector<InfosetId> infosets;  // infosets_of(player)
  RationalMatrix constraints;       // rows x seqs
  RationalVector rhs;
};

struct SequenceForm {
  PlayerSequences p1;
  PlayerSequences p2;
  std::vector<SparseEntry> payoff1;  // sorted by (row, col)
  std::vector<SparseEntry> payoff2;
  std::vector<SparseEntry> chance;  // total chance weight of the leaves behind each entry

  const PlayerSequences& of(std::size_t player) const { return player == 0 ? p1 : p2; }
  RationalMatrix dense_payoff(std::size_t player) const;
};

/// Weight per kept sequence of one player.
struct RealizationPlan {
  std::size_t player = 0;
  RationalVector weights;
  friend bool operator==(const RealizationPlan&, const RealizationPlan&) = default;
};

/// One distribution per information set, following infosets_of(player).
struct BehaviorStrategy {
  std::size_t player = 0;
  std::vector<InfosetId> infosets;
  std::vector<RationalVector> probs;
  friend bool operator==(const BehaviorStrategy&, const BehaviorStrategy&) = default;
};

/// Requires two players with perfect recall and a complete tree.
SequenceForm build_sequence_form(const GameTree& tree);

bool is_feasible(const PlayerSequences& ps, const RealizationPlan& plan);

/// Zero-weight information sets get the uniform distribution.
BehaviorStrategy realization_to_behavior(const GameTree& tree, const PlayerSequences& ps,
                                         const RealizationPlan& plan);
RealizationPlan behavior_to_realization(const GameTree& tree, const PlayerSequences& ps,
                                        const BehaviorStrategy& beh);

/// Mixed strategy over tree.reduced_strategies(player) inducing the same
/// play as `beh`.
RationalVector behavior_to_mixed(const GameTree& tree, const BehaviorStrategy& beh);

/// The behavior strategy choosing uniformly at every information set.
BehaviorStrategy uniform_behavior(const GameTree& tree, std::size_t player);

/// x^T payoff y for one player's sparse payoff matrix.
Rational sequence_payoff(const std::vector<SparseEntry>& payoff, const RealizationPlan& x,
                         const RealizationPlan& y);

std::string format_sequence_form(const SequenceForm& sf);

}  // namespace nash
