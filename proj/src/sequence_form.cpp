#include "nash/sequence_form.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace nash {
namespace {

const char* const kEmptyName = "\xE2\x88\x85";  // ∅

// Which sequences of one player exist, which are substituted out, and where
// each kept sequence sits in the ordered list.
struct SequenceIndex {
  const GameTree& tree;
  std::size_t player;
  std::vector<InfosetId> infosets;
  std::map<InfosetId, std::size_t> position;
  std::map<InfosetId, OwnSequence> history;
  std::map<OwnSequence, std::vector<InfosetId>> following;
  std::set<OwnSequence> reaches_leaf;
  std::map<OwnSequence, std::size_t> kept;
  std::vector<Sequence> seqs;

  SequenceIndex(const GameTree& t, std::size_t p) : tree(t), player(p), infosets(t.infosets_of(p)) {
    for (std::size_t k = 0; k < infosets.size(); ++k) {
      const InfosetId h = infosets[k];
      position[h] = k;
      history[h] = tree.own_sequence(tree.infoset(h).members.front(), p);
      following[history[h]].push_back(h);
    }
    for (NodeId leaf : tree.leaves()) reaches_leaf.insert(tree.own_sequence(leaf, p));

    add({}, std::nullopt, 0);
    std::set<InfosetId> seen;
    std::vector<NodeId> stack{tree.root()};
    while (!stack.empty()) {
      const NodeId id = stack.back();
      stack.pop_back();
      const Node& n = tree.node(id);
      if (n.owner.kind == OwnerKind::Player && n.owner.player == p && seen.insert(*n.infoset).second) {
        for (std::size_t c = 0; c < n.children.size(); ++c) {
          OwnSequence s = extend(history[*n.infoset], *n.infoset, c);
          if (!eliminated(s)) add(s, *n.infoset, c);
        }
      }
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
  }

  static OwnSequence extend(OwnSequence s, InfosetId h, std::size_t c) {
    s.push_back({h, c});
    return s;
  }

  bool eliminated(const OwnSequence& s) const {
    if (s.empty() || reaches_leaf.count(s)) return false;
    const auto it = following.find(s);
    return it != following.end() && it->second.size() == 1;
  }

  void add(const OwnSequence& s, std::optional<InfosetId> h, std::size_t c) {
    std::string name;
    for (const auto& m : s) name += tree.infoset(m.infoset).moves[m.move];
    if (name.empty()) name = kEmptyName;
    kept[s] = seqs.size();
    seqs.push_back({h, c, s, name});
  }

  void expand(const OwnSequence& s, std::vector<std::size_t>& out) const {
    if (auto it = kept.find(s); it != kept.end()) {
      out.push_back(it->second);
      return;
    }
    const InfosetId h = following.at(s).front();
    for (std::size_t c = 0; c < tree.infoset(h).moves.size(); ++c) expand(extend(s, h, c), out);
  }

  Rational weight(const OwnSequence& s, const RationalVector& w) const {
    std::vector<std::size_t> terms;
    expand(s, terms);
    Rational total;
    for (auto t : terms) total += w[t];
    return total;
  }
};

void check_player_count(const GameTree& tree) {
  if (tree.player_count() != 2) throw UnsupportedGame("the sequence form needs exactly two players");
}

}  // namespace

RationalMatrix SequenceForm::dense_payoff(std::size_t player) const {
  RationalMatrix m(p1.seqs.size(), RationalVector(p2.seqs.size()));
  for (const auto& e : player == 0 ? payoff1 : payoff2) m[e.row][e.col] = e.value;
  return m;
}

SequenceForm build_sequence_form(const GameTree& tree) {
  check_player_count(tree);
  tree.validate_complete();
  for (std::size_t p = 0; p < 2; ++p) {
    if (!tree.check_perfect_recall(p)) {
      throw GameError("player " + tree.players()[p] + " does not have perfect recall");
    }
  }
  SequenceForm sf;
  std::vector<SequenceIndex> index;
  for (std::size_t p = 0; p < 2; ++p) {
    index.emplace_back(tree, p);
    const SequenceIndex& ix = index.back();
    PlayerSequences& ps = p == 0 ? sf.p1 : sf.p2;
    ps.player = p;
    ps.seqs = ix.seqs;
    ps.infosets = ix.infosets;
    RationalVector root(ps.seqs.size());
    root[0] = Rational(1);
    ps.constraints.push_back(root);
    ps.rhs.push_back(Rational(1));
    for (InfosetId h : ix.infosets) {
      const OwnSequence& parent = ix.history.at(h);
      if (!ix.kept.count(parent)) continue;
      RationalVector row(ps.seqs.size());
      row[ix.kept.at(parent)] = Rational(-1);
      std::vector<std::size_t> terms;
      for (std::size_t c = 0; c < tree.infoset(h).moves.size(); ++c) ix.expand(SequenceIndex::extend(parent, h, c), terms);
      for (auto t : terms) row[t] += Rational(1);
      ps.constraints.push_back(std::move(row));
      ps.rhs.push_back(Rational());
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::array<Rational, 3>> cells;
  std::vector<std::pair<NodeId, Rational>> stack{{tree.root(), Rational(1)}};
  while (!stack.empty()) {
    const auto [id, weight] = stack.back();
    stack.pop_back();
    const Node& n = tree.node(id);
    if (n.children.empty()) {
      const auto key = std::make_pair(index[0].kept.at(tree.own_sequence(id, 0)),
                                      index[1].kept.at(tree.own_sequence(id, 1)));
      auto& cell = cells[key];
      cell[0] += weight * n.payoffs[0];
      cell[1] += weight * n.payoffs[1];
      cell[2] += weight;
      continue;
    }
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      stack.emplace_back(n.children[c], n.owner.kind == OwnerKind::Chance ? weight * n.chance_probs[c] : weight);
    }
  }
  for (const auto& [key, value] : cells) {
    sf.payoff1.push_back({key.first, key.second, value[0]});
    sf.payoff2.push_back({key.first, key.second, value[1]});
    sf.chance.push_back({key.first, key.second, value[2]});
  }
  return sf;
}

bool is_feasible(const PlayerSequences& ps, const RealizationPlan& plan) {
  if (plan.weights.size() != ps.seqs.size()) return false;
  for (const auto& w : plan.weights) {
    if (w.sign() < 0) return false;
  }
  for (std::size_t r = 0; r < ps.constraints.size(); ++r) {
    if (dot(ps.constraints[r], plan.weights) != ps.rhs[r]) return false;
  }
  return true;
}

BehaviorStrategy realization_to_behavior(const GameTree& tree, const PlayerSequences& ps,
                                         const RealizationPlan& plan) {
  if (plan.weights.size() != ps.seqs.size()) throw GameError("realization plan has the wrong length");
  const SequenceIndex ix(tree, ps.player);
  BehaviorStrategy beh{ps.player, ix.infosets, {}};
  for (InfosetId h : ix.infosets) {
    const auto arity = static_cast<long>(tree.infoset(h).moves.size());
    const OwnSequence& parent = ix.history.at(h);
    const Rational total = ix.weight(parent, plan.weights);
    RationalVector local;
    for (long c = 0; c < arity; ++c) {
      local.push_back(total.is_zero() ? Rational(1, arity)
                                      : ix.weight(SequenceIndex::extend(parent, h, static_cast<std::size_t>(c)),
                                                  plan.weights) / total);
    }
    beh.probs.push_back(std::move(local));
  }
  return beh;
}

RealizationPlan behavior_to_realization(const GameTree& tree, const PlayerSequences& ps,
                                        const BehaviorStrategy& beh) {
  const SequenceIndex ix(tree, ps.player);
  RealizationPlan plan{ps.player, {}};
  for (const auto& s : ix.seqs) {
    Rational w(1);
    for (const auto& m : s.path) w *= beh.probs.at(ix.position.at(m.infoset)).at(m.move);
    plan.weights.push_back(w);
  }
  return plan;
}

RationalVector behavior_to_mixed(const GameTree& tree, const BehaviorStrategy& beh) {
  RationalVector mixed;
  for (const auto& s : tree.reduced_strategies(beh.player)) {
    Rational p(1);
    for (std::size_t k = 0; k < s.choices.size(); ++k) {
      if (s.choices[k]) p *= beh.probs[k][*s.choices[k]];
    }
    mixed.push_back(p);
  }
  return mixed;
}

BehaviorStrategy uniform_behavior(const GameTree& tree, std::size_t player) {
  BehaviorStrategy beh{player, tree.infosets_of(player), {}};
  for (InfosetId h : beh.infosets) {
    const auto k = static_cast<long>(tree.infoset(h).moves.size());
    beh.probs.emplace_back(static_cast<std::size_t>(k), Rational(1, k));
  }
  return beh;
}

Rational sequence_payoff(const std::vector<SparseEntry>& payoff, const RealizationPlan& x,
                         const RealizationPlan& y) {
  Rational total;
  for (const auto& e : payoff) total += x.weights.at(e.row) * e.value * y.weights.at(e.col);
  return total;
}

std::string format_sequence_form(const SequenceForm& sf) {
  std::ostringstream out;
  const char* var[2] = {"x", "y"};
  out << "Sequence form: " << sf.p1.seqs.size() << " x " << sf.p2.seqs.size() << "\n";
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& ps = sf.of(p);
    out << "\nSequences player " << p + 1 << ":";
    for (const auto& s : ps.seqs) out << " " << s.name;
    out << "\nConstraints player " << p + 1 << ":\n";
    for (std::size_t r = 0; r < ps.constraints.size(); ++r) {
      std::string lhs;
      for (std::size_t j = 0; j < ps.seqs.size(); ++j) {
        const Rational& c = ps.constraints[r][j];
        if (c.is_zero()) continue;
        const std::string term = std::string(var[p]) + "_" + ps.seqs[j].name;
        const std::string mag = c.abs() == Rational(1) ? term : c.abs().to_string() + " " + term;
        if (lhs.empty()) lhs = c.sign() < 0 ? "-" + mag : mag;
        else lhs += (c.sign() < 0 ? " - " : " + ") + mag;
      }
      out << "  " << lhs << " = " << ps.rhs[r] << "\n";
    }
  }
  for (std::size_t p = 0; p < 2; ++p) {
    out << "\nPayoff player " << p + 1 << ":\n";
    std::vector<std::vector<std::string>> cells(sf.p1.seqs.size() + 1,
                                                std::vector<std::string>(sf.p2.seqs.size() + 1));
    for (std::size_t j = 0; j < sf.p2.seqs.size(); ++j) cells[0][j + 1] = sf.p2.seqs[j].name;
    for (std::size_t i = 0; i < sf.p1.seqs.size(); ++i) cells[i + 1][0] = sf.p1.seqs[i].name;
    for (const auto& e : p == 0 ? sf.payoff1 : sf.payoff2) cells[e.row + 1][e.col + 1] = e.value.to_string();
    std::vector<std::size_t> width(cells[0].size(), 0);
    const auto display_width = [](const std::string& s) {
      return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
    };
    for (const auto& row : cells) {
      for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], display_width(row[j]));
    }
    for (const auto& row : cells) {
      std::string line;
      for (std::size_t j = 0; j < row.size(); ++j) {
        line += std::string(width[j] - display_width(row[j]) + (j == 0 ? 0 : 2), ' ') + row[j];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
    }
  }
  return out.str();
}

}  // namespace nash
