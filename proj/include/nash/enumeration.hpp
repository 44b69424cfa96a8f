#pragma once

#include <stop_token>
#include <vector>

#include "nash/bimatrix.hpp"
#include "nash/polyhedron.hpp"

namespace nash {

/// A completely labeled vertex pair.  idx1 and idx2 number the distinct
/// strategies of each player from 1 in order of discovery.
struct ExtremeEquilibrium {
  MixedStrategy x;
  MixedStrategy y;
  Rational u;  // x^T A y
  Rational v;  // x^T B y
  std::size_t idx1 = 0;
  std::size_t idx2 = 0;
};

struct EnumerationOptions {
  /// Threads probing faces of Q; 1 runs everything on the calling thread.
  std::size_t workers = 1;
  std::stop_token stop;
};

/// All extreme equilibria, sorted by (idx1, idx2).  For each vertex of P the
/// face of Q carrying its missing labels is enumerated.
std::vector<ExtremeEquilibrium> enumerate_extreme_equilibria(const BimatrixGame& game,
                                                             const EnumerationOptions& options = {});

}  // namespace nash
