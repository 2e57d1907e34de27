#pragma once

// Regular subdivisions induced by a lifting function and the dual tropical
// hypersurface (corner locus of chi(xi) = max <alpha, xi> - rho(alpha)).

#include <optional>
#include <vector>

#include "syzkit/linalg.hpp"
#include "syzkit/toric.hpp"

namespace syzkit {

struct WeightedPointSet {
  std::vector<IVec> A;
  std::vector<Rational> rho;
  std::vector<Rational> c;  // coefficients c_alpha, nonzero

  int dim() const { return A.empty() ? 0 : static_cast<int>(A.front().size()); }
  /// Throws std::invalid_argument on duplicates, size mismatches or zero coefficients.
  void validate() const;
};

/// rho = 0 and c = 1 on the given points.
WeightedPointSet unweighted(std::vector<IVec> A);

struct AffineFunction {
  QVector grad;
  Rational constant;
  Rational operator()(const IVec& x) const;
};

struct RegularSubdivision {
  std::vector<IVec> points;             // the set A
  std::vector<std::vector<int>> cells;  // indices into points, maximal cells
  std::vector<AffineFunction> lifts;    // rho-tilde restricted to each cell
  std::vector<std::vector<int>> cell_vertices;  // extreme points of each cell, in boundary order for d = 2
  std::vector<int> vertices;            // union of cell vertices, sorted
};

RegularSubdivision induced_subdivision(const WeightedPointSet& w);

/// Every cell is a lattice simplex of normalized volume 1.
bool is_maximal_regular(const RegularSubdivision& s);

struct TropicalEdge {
  int from = -1;                 // vertex index
  std::optional<int> to;         // bounded edge endpoint, or ray when absent
  QVector direction;             // primitive ray direction (rays only)
  std::pair<int, int> labels;    // dual edge of the subdivision (indices into A)
};

struct Chamber {
  int label = -1;  // index into A
  QVector sample;  // a point where label is the unique maximizer of chi
};

struct TropicalComplex {
  int dim = 0;
  std::vector<QVector> vertices;
  std::vector<int> vertex_cell;  // dual cell of each vertex
  std::vector<TropicalEdge> edges;
  std::vector<Chamber> chambers;
  RegularSubdivision subdivision;

  std::size_t bounded_edge_count() const;
};

TropicalComplex tropical_hypersurface(const WeightedPointSet& w);

struct ChiValue {
  Rational value;
  std::vector<int> argmax;
};
ChiValue chi(const WeightedPointSet& w, const QVector& xi);

}  // namespace syzkit
