#pragma once

// Numerical checks of the twin Lagrangian fibrations on two hard-coded model
// spaces: C^n minus {w = -1} with w = z_1...z_n, and the Milnor fiber
// yz = prod (x - r_j) in C^3. Points are real vectors (Re z_1, Im z_1, ...).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "syzkit/rational.hpp"

namespace syzkit {

enum class SpaceKind { CnMinusD, MilnorFiber };

struct ModelSpace {
  SpaceKind kind = SpaceKind::CnMinusD;
  int n = 0;                                // complex dimension of C^n (CnMinusD)
  std::vector<std::complex<double>> roots;  // MilnorFiber
  std::vector<double> root_args;            // reported argument of each root

  int complex_dim() const { return kind == SpaceKind::CnMinusD ? n : 2; }
  int ambient_dim() const { return kind == SpaceKind::CnMinusD ? n : 3; }
  std::string name() const;
};

ModelSpace cn_minus_d(int n);
/// Roots must be distinct and nonzero; arguments are reported in [0, 2 pi).
ModelSpace milnor_fiber(std::vector<std::complex<double>> roots);
/// r_j = e^{2 pi i j / p}, j = 1..p, with reported arguments 2 pi j / p.
ModelSpace milnor_unity(int p);

enum class FibrationKind { PiG, PiH, PiA, PiL, P0 };

std::string to_string(FibrationKind k);
FibrationKind parse_fibration(const std::string& name);
/// Throws unless the fibration is defined on the space.
void require_compatible(const ModelSpace& space, FibrationKind fib);

using RealPoint = std::vector<double>;

/// Base coordinates of a point. Angles are in (-pi, pi].
std::vector<double> fibration_value(const ModelSpace& space, FibrationKind fib, const RealPoint& p);
/// Defining equations of the space (Re, Im of yz - prod(x - r_j)); empty for C^n.
std::vector<double> equation_value(const ModelSpace& space, const RealPoint& p);
/// Defining equations followed by fibration components minus b (angles wrapped).
std::vector<double> constraint_value(const ModelSpace& space, FibrationKind fib, const RealPoint& p,
                                     const std::vector<double>& b);

/// Throws std::invalid_argument for base points on the declared walls or discriminant.
void check_base_point(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b);

inline constexpr double kSampleTolerance = 1e-10;
inline constexpr double kRankThreshold = 1e-6;
inline constexpr double kDiffStep = 1e-6;

std::vector<RealPoint> sample_fiber_serial(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                           std::size_t k, std::uint64_t seed = 1);
std::vector<RealPoint> sample_fiber_parallel(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                             std::size_t k, std::uint64_t seed = 1);
std::vector<RealPoint> sample_fiber(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                    std::size_t k, std::uint64_t seed = 1);

struct TangentFrame {
  RealPoint base;
  std::vector<std::vector<double>> vectors;  // orthonormal
  std::size_t rank = 0;                      // numerical rank of the constraint Jacobian
  std::size_t expected_rank = 0;
  bool rank_deficient = false;
  double max_annihilation = 0;               // max |J t|
};

/// Central-difference Jacobian of the constraints; rows are constraints.
std::vector<std::vector<double>> constraint_jacobian(const ModelSpace& space, FibrationKind fib, const RealPoint& p);
TangentFrame tangent_frame(const ModelSpace& space, FibrationKind fib, const RealPoint& p);
/// Standard form sum dx_k ^ dy_k on the ambient space.
double omega(const std::vector<double>& u, const std::vector<double>& v);

struct ResidualReport {
  double max_omega = 0;
  std::size_t points = 0;
  std::size_t rank_deficient = 0;
  double max_annihilation = 0;
};

ResidualReport lagrangian_residual_serial(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                          std::size_t k, std::uint64_t seed = 1);
ResidualReport lagrangian_residual_parallel(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                            std::size_t k, std::uint64_t seed = 1);
ResidualReport lagrangian_residual(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                   std::size_t k, std::uint64_t seed = 1);

struct TwinIntersection {
  bool empty = false;
  int dim = -1;
  int index = -1;
  bool is_clean = false;
  std::size_t samples = 0;
  int orbit_dim = -1;
  double orbit_defect = 0;  // joint constraint residual after acting by the torus
};

/// Twin pair (piG, piH) on C^n or (piA, piL) on the Milnor fiber.
TwinIntersection twin_intersection(const ModelSpace& space, const std::vector<double>& b, const std::vector<double>& b_star,
                                   std::size_t samples = 10, std::uint64_t seed = 1);

/// Max |phi(pi(p)) - phi*(pi*(p))| over m random points; phi, phi* select base coordinates
/// (empty means the default projection to the last coordinates).
double commuting_diagram_check(const ModelSpace& space, std::size_t m, std::uint64_t seed = 1,
                               std::vector<int> phi = {}, std::vector<int> phi_star = {});

struct SingularRay {
  std::size_t root = 0;
  double arg = 0;
  bool degenerate_orbit = false;  // (r_j, 0, 0) lies on the ray and the S^1-orbit collapses there
};

struct SingularRays {
  std::vector<SingularRay> rays;
  bool generic = true;  // no two roots share an argument
};

SingularRays singular_rays(const ModelSpace& space);

struct GroupInvariance {
  bool piA_invariant = false;
  bool piL_equivariant = false;
  bool equation_preserved = false;
  double max_defect = 0;
};

/// The action xi.(x, y, z) = (xi^q x, xi y, xi^{-1} z) on yz = x^p - 1 with xi = modulus * e^{2 pi i / p}.
GroupInvariance group_invariance_check(int p, int q, const Rational& modulus = Rational(1), std::size_t samples = 50,
                                       std::uint64_t seed = 1);

}  // namespace syzkit
