#pragma once

// Mirror charts over the Novikov field: the conic-bundle mirror of a toric
// Calabi-Yau, wall-crossing between chamber charts on the blowup side, the
// global superpotential, and support bookkeeping for distinguished fibers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/laurent.hpp"
#include "syzkit/toric.hpp"
#include "syzkit/tropical.hpp"

namespace syzkit {

struct DiscCorrection {
  IVec alpha;
  std::string tag;  // curve class gamma
  long count = 0;   // n(L_b, beta_alpha + gamma)
  Rational area;    // symplectic area of gamma
};
using DiscCorrectionTable = std::vector<DiscCorrection>;

struct ToricMirrorInput {
  Fan fan;
  std::optional<NefPolytope> nef;  // when absent, A comes from the rays
  Box box;
  std::vector<Rational> rho;       // empty means rho = 0
  DiscCorrectionTable corrections;
  Rational truncation{kDefaultTruncation};
};

struct ToricMirror {
  CYStructure cy;
  std::vector<IVec> A;
  std::vector<Rational> rho;
  std::vector<std::string> base_vars;  // x (or x1..x_{n-1})
  std::vector<std::string> vars;       // base_vars + y + z
  LaurentNov g;                        // over base_vars
  std::string conic_bundle() const;    // "yz = g(x)"
};

/// Resolves A and assembles g = sum (1 + sum_gamma n T^area) T^rho(alpha) x^alpha.
ToricMirror mirror_equation(const ToricMirrorInput& in);
/// (g) * z^{-1} over vars.
LaurentNov superpotential_U1(const ToricMirror& m);
/// The monomial y over vars.
LaurentNov superpotential_U2(const ToricMirror& m);

struct GluingResult {
  bool ok = false;
  std::string warning;
};
/// Substitutes y = g z^{-1} in W_U2 and compares with W_U1 (all over the same variable list).
GluingResult gluing_check(const LaurentNov& g, const LaurentNov& W_U1, const LaurentNov& W_U2);

// ---- blowup side: chamber charts with coordinates (w0, v_1, ..., v_{n-1}) ----

std::vector<std::string> chart_vars(std::size_t dim);

struct WallCrossing {
  IVec from;
  IVec to;
  Rational eps;
};

/// Rewrites an expression in chart `from` coordinates into chart `to`
/// coordinates: v_from^m = (1 + T^{-eps} w0)^{<to - from, m>} v_to^m, w0 fixed.
LaurentNov wall_crossing_apply(const WallCrossing& wc, const LaurentNov& m);

/// Composite of the legs, as exponents of (1 + T^{-eps} w0) per eps and per v-generator.
std::map<Rational, IVec, RationalLess> wall_crossing_composite(const std::vector<WallCrossing>& loop);
/// True iff the closed loop composes to the identity.
bool monodromy_check(const std::vector<WallCrossing>& loop);

struct BoundaryFacet {
  IVec sigma;
  Rational kappa;
};

/// W = w0 + sum_i (1 + T^{-eps} w0)^{<alpha - alpha_i, sigma_i>} T^{kappa_i} v^{sigma_i} on chart alpha.
LaurentNov global_superpotential(const std::vector<BoundaryFacet>& facets, const std::vector<IVec>& A,
                                 const IVec& alpha, const Rational& eps,
                                 const Rational& truncation = Rational(kDefaultTruncation));
/// alpha_i minimizing <sigma, .> over A; throws on ties.
IVec alpha_min(const BoundaryFacet& f, const std::vector<IVec>& A);

struct ChamberChart {
  IVec label;
  std::vector<std::string> coordinates;
  LaurentNov superpotential;
  std::string provenance;
};

struct ChamberAtlas {
  std::vector<ChamberChart> charts;
  std::vector<WallCrossing> walls;                // one per ordered adjacent pair
  std::vector<std::vector<WallCrossing>> loops;   // closed chamber loops to check
};

/// Charts for each vertex of the subdivision induced by (A, rho), adjacency from its edges.
ChamberAtlas build_atlas(const WeightedPointSet& w, const std::vector<BoundaryFacet>& facets, const Rational& eps,
                         const Rational& truncation = Rational(kDefaultTruncation));

struct AtlasCheck {
  bool monodromy = true;
  bool chart_independent = true;
  std::vector<std::string> failures;
};
AtlasCheck check_atlas(const ChamberAtlas& atlas);

// ---- support of the distinguished fiber ----

enum class SupportSide { ToricCY, Blowup };

struct SupportInput {
  SupportSide side = SupportSide::ToricCY;
  // ToricCY: areas C4 (one per base coordinate); Blowup: areas = {C8}, plus lambda_ref.
  std::vector<Rational> areas;
  Rational lambda_ref{0};
  // Holonomies per chart (one list means the same on every chart); each must have unit norm.
  std::vector<std::vector<GaussianRational>> chart_holonomies;
  Rational eps{1, 10};
};

struct ChartEquations {
  std::string chart;
  std::vector<LaurentNov> equations;  // each equation is expr = 0
};

struct SupportReport {
  std::string fiber_of;  // "p0" or "w0"
  std::vector<NovikovSeries> fiber_param;
  std::vector<ChartEquations> charts;
  bool glued = false;           // transition maps carry each chart's equations onto the next
  bool singular_fiber = false;  // blowup: w0 = -T^eps; toric: g(s) = 0
};

SupportReport support_transform(const SupportInput& in, const ToricMirror* toric, const ChamberAtlas* atlas);

}  // namespace syzkit
