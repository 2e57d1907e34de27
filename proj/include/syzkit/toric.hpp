#pragma once

// Fans, the Calabi-Yau covector, nef polytopes and their lattice points.

#include <optional>
#include <utility>
#include <vector>

#include "syzkit/rational.hpp"

namespace syzkit {

using IVec = std::vector<long>;

struct Fan {
  int dim = 0;
  std::vector<IVec> rays;
  std::vector<std::vector<int>> cones;  // optional simplicial cones (ray indices)
};

/// Validates primitivity, distinctness and dimensions; throws std::invalid_argument.
Fan make_fan(int dim, std::vector<IVec> rays, std::vector<std::vector<int>> cones = {});

struct CYStructure {
  IVec nu;
};

/// Integer covector nu with <nu, v> = 1 on every ray, if one exists.
std::optional<CYStructure> check_calabi_yau(const Fan& fan);

/// Exponent set A: the rays, shifted by v_0 and written in a Z-basis of the
/// hyperplane lattice N_nu. The basis is taken from the first independent
/// differences v_a - v_0 when they span the differences integrally.
std::vector<IVec> exponents_from_rays(const Fan& fan, const CYStructure& cy);

struct Facet {
  IVec sigma;
  Rational offset;  // P = { v : <sigma, v> + offset >= 0 }
};

struct NefPolytope {
  std::vector<Facet> facets;
  int dim() const { return facets.empty() ? 0 : static_cast<int>(facets.front().sigma.size()); }
  bool contains(const IVec& v) const;
  bool contains(const std::vector<Rational>& v) const;
};

struct LatticeEnumeration {
  std::vector<IVec> points;
  /// Some point of P sits on the box boundary with its outward neighbour also in P.
  bool truncated = false;
};

using Box = std::vector<std::pair<long, long>>;

LatticeEnumeration lattice_points(const NefPolytope& P, const Box& box);

/// Vertices of P (exact); P is assumed bounded.
std::vector<std::vector<Rational>> polytope_vertices(const NefPolytope& P);

/// True iff every nonempty face of P contains a point of A.
bool face_transversality_check(const std::vector<IVec>& A, const NefPolytope& P);

long dot(const IVec& a, const IVec& b);

}  // namespace syzkit
