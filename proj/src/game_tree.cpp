#include "nash/game_tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace nash {

std::string default_move_name(std::size_t player, std::size_t index) {
  return default_strategy_name(index, player == 0);
}

GameTree::GameTree(std::vector<std::string> players) : players_(std::move(players)) {
  if (players_.empty()) throw GameError("a game needs at least one player");
  root_ = new_node(std::nullopt);
}

GameTree GameTree::starting_tree() {
  GameTree t;
  t.add_children(t.root(), 2);
  return t;
}

const Node& GameTree::node(NodeId id) const {
  if (!contains(id)) throw GameError("unknown node " + std::to_string(id));
  return *nodes_[id];
}

Node& GameTree::mut(NodeId id) {
  if (!contains(id)) throw GameError("unknown node " + std::to_string(id));
  return *nodes_[id];
}

const InformationSet& GameTree::infoset(InfosetId id) const {
  if (!has_infoset(id)) throw GameError("unknown information set " + std::to_string(id));
  return *infosets_[id];
}

InformationSet& GameTree::mut_infoset(InfosetId id) {
  if (!has_infoset(id)) throw GameError("unknown information set " + std::to_string(id));
  return *infosets_[id];
}

void GameTree::rename_player(std::size_t player, std::string name) {
  check_player(player);
  players_[player] = std::move(name);
}

void GameTree::check_player(std::size_t player) const {
  if (player >= players_.size()) throw GameError("unknown player " + std::to_string(player + 1));
}

NodeId GameTree::new_node(std::optional<NodeId> parent) {
  Node n;
  n.parent = parent;
  n.payoffs.assign(players_.size(), Rational());
  if (!free_nodes_.empty()) {
    const NodeId id = free_nodes_.back();
    free_nodes_.pop_back();
    nodes_[id] = std::move(n);
    return id;
  }
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

InfosetId GameTree::new_infoset(std::size_t player, std::vector<NodeId> members,
                                std::vector<std::string> moves) {
  InformationSet s{player, std::move(members), std::move(moves)};
  InfosetId id;
  if (!free_infosets_.empty()) {
    id = free_infosets_.back();
    free_infosets_.pop_back();
    infosets_[id] = std::move(s);
  } else {
    infosets_.push_back(std::move(s));
    id = infosets_.size() - 1;
  }
  for (NodeId m : infosets_[id]->members) nodes_[m]->infoset = id;
  return id;
}

void GameTree::release_infoset(InfosetId id) {
  infosets_[id].reset();
  free_infosets_.push_back(id);
}

void GameTree::detach_from_infoset(NodeId id) {
  Node& n = mut(id);
  if (!n.infoset) return;
  InformationSet& s = mut_infoset(*n.infoset);
  s.members.erase(std::remove(s.members.begin(), s.members.end(), id), s.members.end());
  if (s.members.empty()) release_infoset(*n.infoset);
  n.infoset.reset();
}

std::string GameTree::fresh_move_name(std::size_t player, std::vector<std::string>& taken) const {
  for (std::size_t k = 0;; ++k) {
    std::string candidate = default_move_name(player, k);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) {
      taken.push_back(candidate);
      return candidate;
    }
  }
}

std::vector<std::string> GameTree::fresh_move_names(std::size_t player, std::size_t count) const {
  std::vector<std::string> taken;
  for (const auto& s : infosets_) {
    if (s && s->player == player) taken.insert(taken.end(), s->moves.begin(), s->moves.end());
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(fresh_move_name(player, taken));
  return out;
}

void GameTree::apply(const EditAction& action) {
  std::visit(
      [this](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AddChildren>) add_children(a.node, a.count);
        else if constexpr (std::is_same_v<T, AddChild>) add_child(a.node);
        else if constexpr (std::is_same_v<T, DeleteSubtree>) delete_subtree(a.node);
        else if constexpr (std::is_same_v<T, AssignOwner>) assign_owner(a.node, a.owner);
        else if constexpr (std::is_same_v<T, MergeInfosets>) merge_infosets(a.first, a.second);
        else if constexpr (std::is_same_v<T, DissolveInfoset>) dissolve_infoset(a.infoset);
        else if constexpr (std::is_same_v<T, CutInfoset>) cut_infoset(a.infoset, a.boundary);
        else if constexpr (std::is_same_v<T, SetMoveNames>) set_move_names(a.player, a.labels);
        else if constexpr (std::is_same_v<T, SetChanceProb>) set_chance_prob(a.node, a.child, a.prob);
        else if constexpr (std::is_same_v<T, SetPayoffs>) set_payoffs(a.player, a.payoffs);
        else if constexpr (std::is_same_v<T, SetPayoff>) set_payoff(a.leaf, a.player, a.payoff);
      },
      action);
}

void GameTree::add_children(NodeId leaf, std::size_t count) {
  if (!is_leaf(leaf)) throw GameError("add_children: node " + std::to_string(leaf) + " is not a leaf");
  if (count == 0) throw GameError("add_children: count must be positive");
  for (std::size_t i = 0; i < count; ++i) {
    const NodeId child = new_node(leaf);
    mut(leaf).children.push_back(child);
  }
  Node& n = mut(leaf);
  n.payoffs.clear();
  n.owner = Owner{};
}

NodeId GameTree::add_child(NodeId id) {
  if (is_leaf(id)) throw GameError("add_child: node " + std::to_string(id) + " is a leaf");
  const NodeId child = new_node(id);
  Node& n = mut(id);
  n.children.push_back(child);
  const std::size_t k = n.children.size();
  if (n.owner.kind == OwnerKind::Chance) {
    n.chance_probs.assign(k, Rational(1, static_cast<long>(k)));
  } else if (n.owner.kind == OwnerKind::Player) {
    InformationSet& s = mut_infoset(*n.infoset);
    if (s.members.size() > 1) {
      std::vector<std::string> moves = s.moves;
      detach_from_infoset(id);
      std::vector<std::string> taken;
      for (const auto& other : infosets_) {
        if (other && other->player == n.owner.player) taken.insert(taken.end(), other->moves.begin(), other->moves.end());
      }
      taken.insert(taken.end(), moves.begin(), moves.end());
      moves.push_back(fresh_move_name(n.owner.player, taken));
      new_infoset(n.owner.player, {id}, std::move(moves));
    } else {
      std::string name = fresh_move_names(n.owner.player, 1).front();
      mut_infoset(*n.infoset).moves.push_back(std::move(name));
    }
  }
  return child;
}

void GameTree::delete_subtree(NodeId id) {
  if (id == root_) throw GameError("cannot delete the root");
  const NodeId parent = *node(id).parent;
  const std::size_t index = child_index(id);

  std::vector<NodeId> doomed{id};
  for (std::size_t i = 0; i < doomed.size(); ++i) {
    for (NodeId c : node(doomed[i]).children) doomed.push_back(c);
  }
  for (NodeId d : doomed) {
    detach_from_infoset(d);
    nodes_[d].reset();
    free_nodes_.push_back(d);
  }

  Node& p = mut(parent);
  p.children.erase(p.children.begin() + static_cast<long>(index));
  if (p.children.empty()) {
    detach_from_infoset(parent);
    p.owner = Owner{};
    p.chance_probs.clear();
    p.payoffs.assign(players_.size(), Rational());
    return;
  }
  if (p.owner.kind == OwnerKind::Chance) {
    p.chance_probs.erase(p.chance_probs.begin() + static_cast<long>(index));
    const Rational total = sum(p.chance_probs);
    const auto k = static_cast<long>(p.chance_probs.size());
    for (auto& q : p.chance_probs) q = total.is_zero() ? Rational(1, k) : q / total;
  } else if (p.owner.kind == OwnerKind::Player) {
    InformationSet& s = mut_infoset(*p.infoset);
    std::vector<std::string> moves = s.moves;
    moves.erase(moves.begin() + static_cast<long>(index));
    if (s.members.size() > 1) {
      detach_from_infoset(parent);
      new_infoset(p.owner.player, {parent}, std::move(moves));
    } else {
      s.moves = std::move(moves);
    }
  }
}

void GameTree::assign_owner(NodeId id, Owner owner) {
  if (is_leaf(id)) throw GameError("assign_owner: leaves have no owner");
  if (owner.kind == OwnerKind::Player) check_player(owner.player);
  detach_from_infoset(id);
  Node& n = mut(id);
  n.owner = owner;
  n.chance_probs.clear();
  const std::size_t k = n.children.size();
  if (owner.kind == OwnerKind::Player) {
    new_infoset(owner.player, {id}, fresh_move_names(owner.player, k));
  } else if (owner.kind == OwnerKind::Chance) {
    mut(id).chance_probs.assign(k, Rational(1, static_cast<long>(k)));
  }
}

InfosetId GameTree::merge_infosets(InfosetId first, InfosetId second) {
  if (first == second) throw GameError("merge: the information sets are identical");
  const InformationSet& a = infoset(first);
  const InformationSet& b = infoset(second);
  if (a.player != b.player) throw GameError("merge: information sets belong to different players");
  if (a.moves.size() != b.moves.size()) throw GameError("merge: nodes have different numbers of children");
  std::vector<NodeId> moved = b.members;
  release_infoset(second);
  InformationSet& target = mut_infoset(first);
  for (NodeId m : moved) {
    target.members.push_back(m);
    mut(m).infoset = first;
  }
  return first;
}

void GameTree::dissolve_infoset(InfosetId id) {
  InformationSet& s = mut_infoset(id);
  const std::size_t player = s.player;
  const std::size_t arity = s.moves.size();
  std::vector<NodeId> rest(s.members.begin() + 1, s.members.end());
  s.members.resize(1);
  for (NodeId m : rest) {
    mut(m).infoset.reset();
    new_infoset(player, {m}, fresh_move_names(player, arity));
  }
}

InfosetId GameTree::cut_infoset(InfosetId id, std::size_t boundary) {
  InformationSet& s = mut_infoset(id);
  if (boundary == 0 || boundary >= s.members.size()) {
    throw GameError("cut: both parts of the information set must be nonempty");
  }
  const std::size_t player = s.player;
  const std::size_t arity = s.moves.size();
  std::vector<NodeId> tail(s.members.begin() + static_cast<long>(boundary), s.members.end());
  s.members.resize(boundary);
  for (NodeId m : tail) mut(m).infoset.reset();
  return new_infoset(player, std::move(tail), fresh_move_names(player, arity));
}

void GameTree::set_move_names(std::size_t player, const std::vector<std::string>& labels) {
  check_player(player);
  const auto sets = infosets_of(player);
  std::size_t total = 0;
  for (InfosetId h : sets) total += infoset(h).moves.size();
  if (labels.size() != total) {
    throw GameError("set_move_names: player " + players_[player] + " has " + std::to_string(total) +
                    " moves, got " + std::to_string(labels.size()) + " names");
  }
  std::size_t k = 0;
  for (InfosetId h : sets) {
    for (auto& m : mut_infoset(h).moves) m = labels[k++];
  }
}

void GameTree::set_move_name(InfosetId id, std::size_t move, std::string label) {
  InformationSet& s = mut_infoset(id);
  if (move >= s.moves.size()) throw GameError("set_move_name: no such move");
  s.moves[move] = std::move(label);
}

void GameTree::reset_move_names() {
  std::vector<std::size_t> counter(players_.size(), 0);
  for (InfosetId h : all_infosets()) {
    InformationSet& s = mut_infoset(h);
    for (auto& m : s.moves) m = default_move_name(s.player, counter[s.player]++);
  }
}

void GameTree::set_chance_prob(NodeId id, std::size_t child, const Rational& prob) {
  Node& n = mut(id);
  if (n.owner.kind != OwnerKind::Chance) throw GameError("set_chance_prob: not a chance node");
  if (child >= n.children.size()) throw GameError("set_chance_prob: no such child");
  if (prob.sign() < 0 || prob > Rational(1)) throw GameError("probability must lie in [0, 1]");
  const Rational remaining = Rational(1) - prob;
  const Rational others = sum(n.chance_probs) - n.chance_probs[child];
  const auto k = static_cast<long>(n.children.size());
  for (std::size_t i = 0; i < n.chance_probs.size(); ++i) {
    if (i == child) continue;
    if (k == 2 || others.is_zero()) {
      n.chance_probs[i] = remaining / Rational(k - 1);
    } else {
      n.chance_probs[i] = n.chance_probs[i] * remaining / others;
    }
  }
  n.chance_probs[child] = prob;
}

void GameTree::set_chance_probs(NodeId id, const RationalVector& probs) {
  Node& n = mut(id);
  if (n.owner.kind != OwnerKind::Chance) throw GameError("set_chance_probs: not a chance node");
  if (probs.size() != n.children.size()) throw GameError("set_chance_probs: one probability per child needed");
  for (const auto& q : probs) {
    if (q.sign() < 0) throw GameError("probability must be nonnegative");
  }
  if (sum(probs) != Rational(1)) throw GameError("chance probabilities must sum to one");
  n.chance_probs = probs;
}

void GameTree::set_payoffs(std::size_t player, const RationalVector& payoffs) {
  check_player(player);
  const auto ls = leaves();
  if (payoffs.size() != ls.size()) {
    throw GameError("set_payoffs: tree has " + std::to_string(ls.size()) + " leaves, got " +
                    std::to_string(payoffs.size()) + " payoffs");
  }
  for (std::size_t k = 0; k < ls.size(); ++k) mut(ls[k]).payoffs[player] = payoffs[k];
}

void GameTree::set_payoff(NodeId leaf, std::size_t player, const Rational& payoff) {
  check_player(player);
  if (!is_leaf(leaf)) throw GameError("set_payoff: node is not a leaf");
  mut(leaf).payoffs[player] = payoff;
}

void GameTree::default_payoffs() {
  const auto ls = leaves();
  for (std::size_t k = 0; k < ls.size(); ++k) {
    mut(ls[k]).payoffs.assign(players_.size(), Rational(static_cast<long>(k)));
  }
}

std::vector<NodeId> GameTree::leaves() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = node(id);
    if (n.children.empty()) {
      out.push_back(id);
    } else {
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

std::vector<NodeId> GameTree::bfs_order() const {
  std::vector<NodeId> order{root_};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (NodeId c : node(order[i]).children) order.push_back(c);
  }
  return order;
}

std::vector<InfosetId> GameTree::all_infosets() const {
  std::vector<InfosetId> out;
  std::vector<bool> seen(infosets_.size(), false);
  for (NodeId id : bfs_order()) {
    const Node& n = node(id);
    if (n.infoset && !seen[*n.infoset]) {
      seen[*n.infoset] = true;
      out.push_back(*n.infoset);
    }
  }
  return out;
}

std::vector<InfosetId> GameTree::infosets_of(std::size_t player) const {
  std::vector<InfosetId> out;
  for (InfosetId h : all_infosets()) {
    if (infoset(h).player == player) out.push_back(h);
  }
  return out;
}

std::string GameTree::move_label(NodeId id, std::size_t child) const {
  const Node& n = node(id);
  if (child >= n.children.size()) throw GameError("move_label: no such child");
  switch (n.owner.kind) {
    case OwnerKind::Player: return infoset(*n.infoset).moves[child];
    case OwnerKind::Chance: return n.chance_probs[child].to_string();
    case OwnerKind::Unassigned: break;
  }
  return {};
}

std::size_t GameTree::child_index(NodeId child) const {
  const Node& c = node(child);
  if (!c.parent) throw GameError("the root has no parent");
  const auto& siblings = node(*c.parent).children;
  return static_cast<std::size_t>(std::find(siblings.begin(), siblings.end(), child) - siblings.begin());
}

OwnSequence GameTree::own_sequence(NodeId id, std::size_t player) const {
  OwnSequence seq;
  NodeId cur = id;
  while (node(cur).parent) {
    const NodeId parent = *node(cur).parent;
    const Node& p = node(parent);
    if (p.owner.kind == OwnerKind::Player && p.owner.player == player) {
      seq.push_back({*p.infoset, child_index(cur)});
    }
    cur = parent;
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

bool GameTree::check_perfect_recall(std::size_t player) const {
  check_player(player);
  for (InfosetId h : infosets_of(player)) {
    const auto& members = infoset(h).members;
    const OwnSequence reference = own_sequence(members.front(), player);
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (own_sequence(members[k], player) != reference) return false;
    }
  }
  return true;
}

void GameTree::validate_complete() const {
  for (NodeId id : bfs_order()) {
    const Node& n = node(id);
    if (!n.children.empty() && n.owner.kind == OwnerKind::Unassigned) {
      throw GameError("node " + std::to_string(id) + " has no player assigned");
    }
  }
}

std::vector<ReducedStrategy> GameTree::reduced_strategies(std::size_t player) const {
  check_player(player);
  if (!check_perfect_recall(player)) {
    throw GameError("player " + players_[player] + " does not have perfect recall");
  }
  const auto sets = infosets_of(player);
  std::map<InfosetId, std::size_t> position;
  std::vector<OwnSequence> history;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    position[sets[k]] = k;
    history.push_back(own_sequence(infoset(sets[k]).members.front(), player));
  }

  std::vector<ReducedStrategy> out;
  std::vector<std::optional<std::size_t>> choices(sets.size());
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == sets.size()) {
      ReducedStrategy s{choices, {}};
      for (std::size_t i = 0; i < sets.size(); ++i) {
        s.name += choices[i] ? infoset(sets[i]).moves[*choices[i]] : std::string("*");
      }
      if (s.name.empty()) s.name = "-";
      out.push_back(std::move(s));
      return;
    }
    const bool reachable = std::all_of(history[k].begin(), history[k].end(), [&](const OwnMove& m) {
      return choices[position.at(m.infoset)] == m.move;
    });
    if (!reachable) {
      choices[k].reset();
      extend(k + 1);
      return;
    }
    for (std::size_t c = 0; c < infoset(sets[k]).moves.size(); ++c) {
      choices[k] = c;
      extend(k + 1);
    }
    choices[k].reset();
  };
  extend(0);
  return out;
}

BigInt GameTree::full_strategy_count(std::size_t player) const {
  BigInt count = 1;
  for (InfosetId h : infosets_of(player)) count *= static_cast<unsigned long>(infoset(h).moves.size());
  return count;
}

RationalVector GameTree::expected_payoffs(const std::vector<const ReducedStrategy*>& profile) const {
  if (profile.size() != players_.size()) throw GameError("expected_payoffs: one strategy per player needed");
  std::vector<std::map<InfosetId, std::size_t>> position(players_.size());
  for (std::size_t p = 0; p < players_.size(); ++p) {
    const auto sets = infosets_of(p);
    for (std::size_t k = 0; k < sets.size(); ++k) position[p][sets[k]] = k;
  }
  RationalVector total(players_.size());
  std::function<void(NodeId, const Rational&)> walk = [&](NodeId id, const Rational& weight) {
    const Node& n = node(id);
    if (n.children.empty()) {
      for (std::size_t p = 0; p < players_.size(); ++p) total[p] += weight * n.payoffs[p];
      return;
    }
    switch (n.owner.kind) {
      case OwnerKind::Chance:
        for (std::size_t c = 0; c < n.children.size(); ++c) {
          if (!n.chance_probs[c].is_zero()) walk(n.children[c], weight * n.chance_probs[c]);
        }
        return;
      case OwnerKind::Player: {
        const auto& choice = profile[n.owner.player]->choices.at(position[n.owner.player].at(*n.infoset));
        if (!choice) throw GameError("strategy leaves a reachable move unspecified");
        walk(n.children[*choice], weight);
        return;
      }
      case OwnerKind::Unassigned:
        throw GameError("node " + std::to_string(id) + " has no player assigned");
    }
  };
  walk(root_, Rational(1));
  return total;
}

BimatrixGame GameTree::to_strategic_form() const {
  if (players_.size() != 2) throw UnsupportedGame("strategic form is only available for two players");
  validate_complete();
  const auto rows = reduced_strategies(0);
  const auto cols = reduced_strategies(1);
  RationalMatrix a(rows.size(), RationalVector(cols.size()));
  RationalMatrix b = a;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto payoff = expected_payoffs({&rows[i], &cols[j]});
      a[i][j] = payoff[0];
      b[i][j] = payoff[1];
    }
  }
  const auto unique_names = [](const std::vector<ReducedStrategy>& strategies) {
    std::vector<std::string> names;
    std::map<std::string, int> seen;
    for (const auto& s : strategies) {
      const int k = seen[s.name]++;
      names.push_back(k == 0 ? s.name : s.name + "#" + std::to_string(k + 1));
    }
    return names;
  };
  return BimatrixGame(std::move(a), std::move(b), unique_names(rows), unique_names(cols));
}

bool structurally_equal(const GameTree& a, const GameTree& b) {
  if (a.players() != b.players() || a.settings() != b.settings()) return false;
  std::map<InfosetId, InfosetId> forward;
  std::map<InfosetId, InfosetId> backward;
  std::function<bool(NodeId, NodeId)> same = [&](NodeId x, NodeId y) {
    const Node& nx = a.node(x);
    const Node& ny = b.node(y);
    if (nx.children.size() != ny.children.size()) return false;
    if (nx.children.empty()) return nx.payoffs == ny.payoffs;
    if (!(nx.owner == ny.owner)) return false;
    if (nx.owner.kind == OwnerKind::Chance && nx.chance_probs != ny.chance_probs) return false;
    if (nx.owner.kind == OwnerKind::Player) {
      const InfosetId hx = *nx.infoset;
      const InfosetId hy = *ny.infoset;
      const auto f = forward.find(hx);
      const auto r = backward.find(hy);
      if (f == forward.end() && r == backward.end()) {
        forward[hx] = hy;
        backward[hy] = hx;
      } else if (f == forward.end() || r == backward.end() || f->second != hy || r->second != hx) {
        return false;
      }
      if (a.infoset(hx).moves != b.infoset(hy).moves) return false;
      if (a.infoset(hx).members.size() != b.infoset(hy).members.size()) return false;
    }
    for (std::size_t c = 0; c < nx.children.size(); ++c) {
      if (!same(nx.children[c], ny.children[c])) return false;
    }
    return true;
  };
  return same(a.root(), b.root());
}

}  // namespace nash
