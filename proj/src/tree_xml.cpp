#include "nash/tree_xml.hpp"

#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace nash {
namespace {

namespace pt = boost::property_tree;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

class Writer {
 public:
  void open(std::string_view tag, const std::string& attrs = {}) {
    line("<" + std::string(tag) + attrs + ">");
    ++depth_;
  }
  void close(std::string_view tag) {
    --depth_;
    line("</" + std::string(tag) + ">");
  }
  void leaf(std::string_view tag, const std::string& attrs, std::string_view text) {
    line("<" + std::string(tag) + attrs + ">" + escape(text) + "</" + std::string(tag) + ">");
  }
  void line(const std::string& s) { out_ << std::string(3 * depth_, ' ') << s << '\n'; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  int depth_ = 0;
};

std::string attr(std::string_view name, std::string_view value) {
  return " " + std::string(name) + "=\"" + escape(value) + "\"";
}

void write_players(Writer& w, const std::vector<std::string>& players) {
  w.open("players");
  for (std::size_t p = 0; p < players.size(); ++p) {
    w.leaf("player", attr("playerId", std::to_string(p + 1)), players[p]);
  }
  w.close("players");
}

void write_strategic(Writer& w, const BimatrixGame& g) {
  w.open("strategicForm", attr("rows", std::to_string(g.rows())) + attr("cols", std::to_string(g.cols())));
  for (const auto& n : g.row_names()) w.leaf("strategy", attr("player", "1"), n);
  for (const auto& n : g.col_names()) w.leaf("strategy", attr("player", "2"), n);
  const auto dump = [](const RationalMatrix& m) {
    std::string s;
    for (const auto& row : m) {
      for (const auto& v : row) s += (s.empty() ? "" : " ") + v.to_string();
    }
    return s;
  };
  w.leaf("payoffs", attr("player", "1"), dump(g.a()));
  w.leaf("payoffs", attr("player", "2"), dump(g.b()));
  w.close("strategicForm");
}

void write_node(Writer& w, const GameTree& t, NodeId id, const std::string& edge,
                const std::map<InfosetId, std::size_t>& shared) {
  const Node& n = t.node(id);
  if (n.children.empty()) {
    w.open("outcome", edge);
    for (std::size_t p = 0; p < t.player_count(); ++p) {
      w.leaf("payoff", attr("player", std::to_string(p + 1)), n.payoffs[p].to_string());
    }
    w.close("outcome");
    return;
  }
  std::string attrs = edge;
  if (n.owner.kind == OwnerKind::Chance) attrs += attr("player", "chance");
  if (n.owner.kind == OwnerKind::Player) {
    attrs += attr("player", std::to_string(n.owner.player + 1));
    if (auto it = shared.find(*n.infoset); it != shared.end()) attrs += attr("iset", std::to_string(it->second));
  }
  w.open("node", attrs);
  for (std::size_t c = 0; c < n.children.size(); ++c) {
    std::string child_edge;
    if (n.owner.kind == OwnerKind::Player) child_edge = attr("move", t.move_label(id, c));
    if (n.owner.kind == OwnerKind::Chance) child_edge = attr("prob", n.chance_probs[c].to_string());
    write_node(w, t, n.children[c], child_edge, shared);
  }
  w.close("node");
}

[[noreturn]] void fail(const std::string& what) { throw ParseError("game file: " + what); }

std::optional<std::string> attribute(const pt::ptree& elem, const char* name) {
  if (auto a = elem.get_child_optional("<xmlattr>")) {
    if (auto v = a->get_optional<std::string>(name)) return *v;
  }
  return std::nullopt;
}

bool is_meta(const std::string& key) { return key == "<xmlattr>" || key == "<xmlcomment>"; }

void expect_only(const pt::ptree& elem, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, child] : elem) {
    if (is_meta(key)) continue;
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail("unknown element <" + key + "> in <" + std::string(where) + ">");
  }
}

Rational parse_number(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const ParseError&) {
    fail("'" + text + "' is not a rational number");
  } catch (const DomainError&) {
    fail("'" + text + "' is not a rational number");
  }
}

std::size_t parse_player(const std::string& text, std::size_t count) {
  std::size_t pos = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(text, &pos);
  } catch (const std::exception&) {
    fail("bad player id '" + text + "'");
  }
  if (pos != text.size() || p == 0 || p > count) fail("bad player id '" + text + "'");
  return p - 1;
}

struct TreeBuilder {
  GameTree& tree;
  std::map<std::string, std::vector<InfosetId>> groups;

  void build(const pt::ptree& elem, bool is_outcome, NodeId id) {
    if (is_outcome) {
      expect_only(elem, {"payoff"}, "outcome");
      for (const auto& [key, child] : elem) {
        if (key != "payoff") continue;
        const auto who = attribute(child, "player");
        if (!who) fail("payoff without player attribute");
        tree.set_payoff(id, parse_player(*who, tree.player_count()), parse_number(child.data()));
      }
      return;
    }
    expect_only(elem, {"node", "outcome"}, "node");
    std::vector<std::pair<const pt::ptree*, bool>> kids;
    for (const auto& [key, child] : elem) {
      if (!is_meta(key)) kids.emplace_back(&child, key == "outcome");
    }
    if (kids.empty()) fail("<node> without children");
    tree.add_children(id, kids.size());
    const auto children = tree.node(id).children;
    const auto who = attribute(elem, "player");
    if (who && *who == "chance") {
      tree.assign_owner(id, Owner::chance());
      RationalVector probs;
      for (const auto& [k, _] : kids) {
        const auto prob = attribute(*k, "prob");
        if (!prob) fail("chance move without prob attribute");
        probs.push_back(parse_number(*prob));
      }
      try {
        tree.set_chance_probs(id, probs);
      } catch (const GameError& e) {
        fail(e.what());
      }
    } else if (who) {
      tree.assign_owner(id, Owner::personal(parse_player(*who, tree.player_count())));
      const InfosetId h = *tree.node(id).infoset;
      for (std::size_t c = 0; c < kids.size(); ++c) {
        const auto move = attribute(*kids[c].first, "move");
        if (!move) fail("personal move without move attribute");
        tree.set_move_name(h, c, *move);
      }
      if (const auto iset = attribute(elem, "iset")) groups[*iset].push_back(h);
    }
    for (std::size_t c = 0; c < kids.size(); ++c) build(*kids[c].first, kids[c].second, children[c]);
  }

  void merge_groups() {
    for (const auto& [name, sets] : groups) {
      for (std::size_t k = 1; k < sets.size(); ++k) {
        if (tree.infoset(sets[k]).moves != tree.infoset(sets[0]).moves) {
          fail("information set " + name + " has inconsistent move names");
        }
        try {
          tree.merge_infosets(sets[0], sets[k]);
        } catch (const GameError& e) {
          fail("information set " + name + ": " + e.what());
        }
      }
    }
  }
};

BimatrixGame read_strategic(const pt::ptree& elem) {
  expect_only(elem, {"strategy", "payoffs"}, "strategicForm");
  const auto rows_attr = attribute(elem, "rows");
  const auto cols_attr = attribute(elem, "cols");
  if (!rows_attr || !cols_attr) fail("strategicForm needs rows and cols attributes");
  const std::size_t rows = parse_player(*rows_attr, SIZE_MAX) + 1;
  const std::size_t cols = parse_player(*cols_attr, SIZE_MAX) + 1;
  std::vector<std::string> names[2];
  RationalMatrix payoff[2];
  for (const auto& [key, child] : elem) {
    if (is_meta(key)) continue;
    const auto who = attribute(child, "player");
    if (!who) fail("<" + key + "> without player attribute");
    const std::size_t p = parse_player(*who, 2);
    if (key == "strategy") {
      names[p].push_back(child.data());
      continue;
    }
    std::istringstream in(child.data());
    RationalVector flat;
    for (std::string tok; in >> tok;) flat.push_back(parse_number(tok));
    if (flat.size() != rows * cols) fail("payoffs block has the wrong number of entries");
    payoff[p].assign(rows, RationalVector(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) payoff[p][i][j] = flat[i * cols + j];
    }
  }
  if (payoff[0].empty() || payoff[1].empty()) fail("strategicForm needs payoffs for both players");
  try {
    return BimatrixGame(payoff[0], payoff[1], names[0], names[1]);
  } catch (const GameError& e) {
    fail(e.what());
  }
}

}  // namespace

std::string to_xml(const GameTree& tree, const BimatrixGame* strategic) {
  Writer w;
  w.line(R"(<?xml version="1.0" encoding="UTF-8"?>)");
  w.open("game");
  if (!tree.settings().empty()) {
    w.open("display");
    for (const auto& [k, v] : tree.settings()) w.leaf("setting", attr("name", k), v);
    w.close("display");
  }
  write_players(w, tree.players());
  std::map<InfosetId, std::size_t> shared;
  for (InfosetId h : tree.all_infosets()) {
    if (tree.infoset(h).members.size() > 1) shared.emplace(h, shared.size() + 1);
  }
  w.open("extensiveForm");
  write_node(w, tree, tree.root(), {}, shared);
  w.close("extensiveForm");
  if (strategic) write_strategic(w, *strategic);
  w.close("game");
  return w.str();
}

std::string to_xml(const BimatrixGame& game) {
  Writer w;
  w.line(R"(<?xml version="1.0" encoding="UTF-8"?>)");
  w.open("game");
  write_players(w, {"1", "2"});
  write_strategic(w, game);
  w.close("game");
  return w.str();
}

XmlGame read_xml(std::string_view text) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    fail(std::string("malformed XML: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  expect_only(doc, {"game"}, "document");
  const auto root = doc.get_child_optional("game");
  if (!root) fail("missing <game> element");
  expect_only(*root, {"display", "players", "extensiveForm", "strategicForm"}, "game");

  XmlGame out;
  if (const auto players = root->get_child_optional("players")) {
    expect_only(*players, {"player"}, "players");
    for (const auto& [key, child] : *players) {
      if (key == "player") out.players.push_back(child.data());
    }
  }
  if (out.players.empty()) fail("no players declared");

  if (const auto ext = root->get_child_optional("extensiveForm")) {
    expect_only(*ext, {"node", "outcome"}, "extensiveForm");
    const pt::ptree* top = nullptr;
    bool top_outcome = false;
    for (const auto& [key, child] : *ext) {
      if (is_meta(key)) continue;
      if (top) fail("<extensiveForm> has more than one root");
      top = &child;
      top_outcome = key == "outcome";
    }
    if (!top) fail("<extensiveForm> is empty");
    GameTree tree(out.players);
    TreeBuilder builder{tree, {}};
    builder.build(*top, top_outcome, tree.root());
    builder.merge_groups();
    if (const auto display = root->get_child_optional("display")) {
      expect_only(*display, {"setting"}, "display");
      for (const auto& [key, child] : *display) {
        if (key != "setting") continue;
        const auto name = attribute(child, "name");
        if (!name) fail("setting without name attribute");
        tree.settings().emplace_back(*name, child.data());
      }
    }
    out.tree = std::move(tree);
  }
  if (const auto sf = root->get_child_optional("strategicForm")) out.strategic = read_strategic(*sf);
  if (!out.tree && !out.strategic) fail("neither an extensive nor a strategic form present");
  return out;
}

GameTree from_xml(std::string_view text) {
  XmlGame g = read_xml(text);
  if (!g.tree) fail("no extensive form present");
  return std::move(*g.tree);
}

}  // namespace nash
