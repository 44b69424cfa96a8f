#include "nash/components.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nash {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void join(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Bron-Kerbosch with pivoting on a graph given by an adjacency matrix.
void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::vector<std::vector<std::size_t>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t best = 0;
  for (const auto* set : {&p, &x}) {
    for (std::size_t c : *set) {
      const auto k = static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [&](std::size_t w) { return adj[c][w]; }));
      if (k > best) {
        best = k;
        pivot = c;
      }
    }
  }
  std::vector<std::size_t> candidates;
  for (std::size_t w : p) {
    if (!adj[pivot][w]) candidates.push_back(w);
  }
  for (std::size_t w : candidates) {
    std::vector<std::size_t> np;
    std::vector<std::size_t> nx;
    for (std::size_t c : p) {
      if (adj[w][c]) np.push_back(c);
    }
    for (std::size_t c : x) {
      if (adj[w][c]) nx.push_back(c);
    }
    r.push_back(w);
    bron_kerbosch(adj, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), w));
    x.push_back(w);
  }
}

}  // namespace

std::vector<Clique> maximal_cliques(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (const auto& [a, b] : edges) {
    left.push_back(a);
    right.push_back(b);
  }
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());

  // Left-left and right-right pairs are always joined, so cliques of this
  // graph with both sides nonempty are exactly the maximal bicliques.
  const std::size_t nl = left.size();
  const std::size_t total = nl + right.size();
  std::vector<std::vector<bool>> adj(total, std::vector<bool>(total, false));
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t b = 0; b < total; ++b) adj[a][b] = a != b && ((a < nl) == (b < nl));
  }
  for (const auto& [a, b] : edges) {
    const auto i = static_cast<std::size_t>(std::lower_bound(left.begin(), left.end(), a) - left.begin());
    const auto j = nl + static_cast<std::size_t>(std::lower_bound(right.begin(), right.end(), b) - right.begin());
    adj[i][j] = adj[j][i] = true;
  }
  std::vector<std::size_t> all(total);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> r;
  std::vector<std::vector<std::size_t>> found;
  bron_kerbosch(adj, r, all, {}, found);

  std::vector<Clique> out;
  for (const auto& c : found) {
    Clique q;
    for (std::size_t k : c) {
      if (k < nl) q.u.push_back(left[k]);
      else q.v.push_back(right[k - nl]);
    }
    if (q.u.empty() || q.v.empty()) continue;
    std::sort(q.u.begin(), q.u.end());
    std::sort(q.v.begin(), q.v.end());
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Component> connected_components(const std::vector<ExtremeEquilibrium>& eqs) {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  for (const auto& e : eqs) {
    n1 = std::max(n1, e.idx1);
    n2 = std::max(n2, e.idx2);
  }
  // Node k-1 is player-1 strategy k; node n1+k-1 is player-2 strategy k.
  UnionFind uf(n1 + n2);
  for (const auto& e : eqs) uf.join(e.idx1 - 1, n1 + e.idx2 - 1);

  std::map<std::size_t, std::size_t> slot;
  std::vector<Component> out;
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const std::size_t root = uf.find(eqs[k].idx1 - 1);
    auto [it, fresh] = slot.emplace(root, out.size());
    if (fresh) out.emplace_back();
    out[it->second].equilibria.push_back(k);
  }
  for (auto& c : out) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k : c.equilibria) edges.emplace_back(eqs[k].idx1, eqs[k].idx2);
    c.cliques = maximal_cliques(edges);
  }
  return out;
}

}  // namespace nash
