#pragma once

// Desk-scale Floer-side algebra: critical points of superpotentials over the
// Novikov field, Hessians, node factorizations, matrix-factorization hom
// cohomology, and graded rank bookkeeping.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/laurent.hpp"

namespace syzkit {

struct CriticalPoint {
  std::vector<NovikovSeries> coords;
  std::vector<Valuation> leading_valuation;  // infinity for coordinates equal to 0
  Valuation residual;                        // min valuation of dW/dz_i at the point
  NovikovSeries critical_value;
  bool nondegenerate = false;                // Hessian determinant nonzero
};

struct LiftingObstruction {
  std::vector<Valuation> valuation;
  std::string reason;
};

struct CriticalPointResult {
  std::vector<CriticalPoint> points;
  std::vector<LiftingObstruction> obstructions;
};

/// All critical points whose leading-order system is solvable over Q(i), lifted by
/// Newton iteration over the Novikov field. Throws std::domain_error("degenerate
/// leading system") when leading solutions are not isolated. At most 3 variables.
CriticalPointResult critical_points(const LaurentNov& W);

struct HessianReport {
  std::vector<std::vector<NovikovSeries>> hessian;
  NovikovSeries determinant;
  bool nondegenerate = false;
  std::pair<long, long> clifford_dims{0, 0};  // (2^{m-1}, 2^{m-1}) when nondegenerate
};

HessianReport hessian_report(const LaurentNov& W, const std::vector<NovikovSeries>& pt);

struct NodeFactorization {
  bool factored = false;          // W - W(pt) = c * u * v exactly
  NovikovSeries c;
  LaurentNov u, v;
  std::vector<NovikovSeries> normal_form;  // q_i in Q = sum q_i s_i^2 when not factored
  bool reexpands = false;
};

/// Two-variable nondegenerate points only; std::nullopt otherwise.
std::optional<NodeFactorization> node_factorization(const LaurentNov& W, const std::vector<NovikovSeries>& pt);

// ---- matrix factorizations over Q[x_1, ..., x_n] ----

class QPoly {
 public:
  using Exponent = std::vector<long>;
  QPoly() = default;
  explicit QPoly(std::size_t nvars) : nvars_(nvars) {}
  static QPoly constant(std::size_t nvars, const Rational& c);
  static QPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long degree() const;  // -1 for zero
  void add_term(const Exponent& e, const Rational& c);

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& c);
  friend bool operator==(const QPoly& a, const QPoly& b) = default;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Polynomial with rational constant coefficients and nonnegative exponents.
QPoly to_qpoly(const LaurentNov& f);
QPoly parse_qpoly(const std::string& text, const std::vector<std::string>& vars);
std::string to_string(const QPoly& p, const std::vector<std::string>& vars);

using QPolyMatrix = std::vector<std::vector<QPoly>>;

/// d = [[0, A], [B, 0]] on M0 + M1, with A: M1 -> M0 and B: M0 -> M1.
struct MFPair {
  QPolyMatrix A;
  QPolyMatrix B;
  std::size_t rank() const { return A.size(); }
};

MFPair mf_rank_one(const QPoly& a, const QPoly& b);
MFPair mf_direct_sum(const MFPair& M, const MFPair& N);
/// M[1]: the roles of A and B exchanged.
MFPair mf_shift(const MFPair& M);
/// A B = B A = f Id.
bool verify_mf(const QPoly& f, const MFPair& M);

struct GradedRanks {
  long even = 0;
  long odd = 0;
  friend bool operator==(const GradedRanks&, const GradedRanks&) = default;
};

/// Ranks of the cohomology of the hom complex at a single degree cap (no stabilization check).
GradedRanks mf_hom_ranks_at(const QPoly& f, const MFPair& M, const MFPair& N, long degree_cap);
/// Cohomology ranks of Hom(M, N); throws std::runtime_error unless the ranks at cap-1 and cap agree.
GradedRanks mf_hom_ranks(const QPoly& f, const MFPair& M, const MFPair& N, long degree_cap);

struct TotalAlgebra {
  long dimension = 0;
  long even = 0;
  long odd = 0;
  std::vector<GradedRanks> per_node;
};

/// p nodal local models xy, each contributing End of its (x, y) object.
TotalAlgebra dsing_total_algebra(int p, long degree_cap = 4);

using Graded = std::vector<long>;

struct BeilinsonResult {
  Graded graded;
  long total = 0;
};

/// E_1 totals sum_r hom_to[r] (x) hom_from[m-1-r]; every exceptional object must have End = (1).
BeilinsonResult beilinson_rank(const std::vector<Graded>& exceptional_ends, const std::vector<Graded>& hom_to,
                               const std::vector<Graded>& hom_from);

struct RankTable {
  std::string label;
  std::vector<std::pair<std::string, Graded>> rows;
  std::map<std::string, std::string> metadata;
};

}  // namespace syzkit
