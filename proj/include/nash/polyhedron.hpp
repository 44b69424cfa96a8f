#pragma once

#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "nash/bimatrix.hpp"
#include "nash/rational.hpp"

namespace nash {

/// coeffs . x <= rhs for inequalities, coeffs . x = rhs for equations.
struct Constraint {
  RationalVector coeffs;
  Rational rhs;
  std::optional<std::size_t> label;
};

struct HPolyhedron {
  std::size_t dim = 0;
  std::vector<std::string> var_names;
  std::vector<Constraint> inequalities;
  std::vector<Constraint> equations;
};

struct LabeledVertex {
  RationalVector coords;
  std::vector<std::size_t> labels;  // sorted, from tight inequalities and labeled equations
  std::vector<std::size_t> tight;   // indices of tight inequalities
  std::vector<std::size_t> cobasis; // inequalities whose slacks are nonbasic
};

/// Called for every vertex as it is found.
using VertexSink = std::function<void(const LabeledVertex&)>;

/// Reverse-search enumeration of the vertices of a pointed polyhedron.  Each
/// vertex is emitted once, from its lexicographically minimal basis.  Returns
/// false when the polyhedron is empty.  Throws GameError when it contains a
/// line and Cancelled when `stop` fires.
bool enumerate_vertices(const HPolyhedron& poly, const VertexSink& sink, std::stop_token stop = {});
std::vector<LabeledVertex> vertices(const HPolyhedron& poly, std::stop_token stop = {});

/// The face on which every inequality carrying one of `labels` is tight.
HPolyhedron face(const HPolyhedron& poly, const std::vector<std::size_t>& labels);
std::vector<LabeledVertex> face_vertices(const HPolyhedron& poly, const std::vector<std::size_t>& labels,
                                         std::stop_token stop = {});

/// P over (x, v) and Q over (y, u).  Labels 0..m-1 are the rows, m..m+n-1
/// the columns.  P: -x_i <= 0 (label i), sum_i b_ij x_i - v <= 0 (label
/// m+j), sum x = 1.  Q: sum_j a_ij y_j - u <= 0 (label i), -y_j <= 0 (label
/// m+j), sum y = 1.
struct BestResponsePolyhedra {
  HPolyhedron p;
  HPolyhedron q;
};
BestResponsePolyhedra build_best_response_polyhedra(const BimatrixGame& game);

}  // namespace nash
