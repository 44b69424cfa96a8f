#pragma once

#include <utility>
#include <vector>

#include "nash/enumeration.hpp"

namespace nash {

/// U x V: every pairing of a player-1 strategy in U with a player-2
/// strategy in V is an extreme equilibrium.  Ids as in ExtremeEquilibrium.
struct Clique {
  std::vector<std::size_t> u;
  std::vector<std::size_t> v;
  friend auto operator<=>(const Clique&, const Clique&) = default;
};

struct Component {
  std::vector<std::size_t> equilibria;  // positions in the input list
  std::vector<Clique> cliques;
};

/// Maximal bicliques of the bipartite graph with the given (idx1, idx2)
/// edges, sorted by U then V.
std::vector<Clique> maximal_cliques(const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Connected components of the equilibrium graph, ordered by their first
/// equilibrium, each with its maximal cliques.
std::vector<Component> connected_components(const std::vector<ExtremeEquilibrium>& eqs);

}  // namespace nash
