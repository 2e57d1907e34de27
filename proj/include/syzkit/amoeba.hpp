#pragma once

// Amoeba sampling of g_tau(x) = sum c_alpha tau^rho(alpha) x^alpha and the
// distance of a sample to the tropical hypersurface.

#include <complex>
#include <vector>

#include "syzkit/tropical.hpp"

namespace syzkit {

/// Roots of sum_k coeffs[k] x^k (companion-matrix eigenvalues, Newton-polished).
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

/// |p(x)| / sum_k |a_k| |x|^k.
double normalized_residual(const std::vector<std::complex<double>>& coeffs, std::complex<double> x);

struct AmoebaGrid {
  std::size_t lines = 50;   // values of Log_tau(x_1) in [lo, hi]
  std::size_t angles = 50;  // arguments of x_1 in [0, 2 pi)
  double lo = -3.0;
  double hi = 3.0;
};

struct AmoebaSample {
  int dim = 0;
  std::vector<std::vector<double>> points;
  double tau = 0;
  AmoebaGrid grid;
  std::size_t attempted = 0;  // roots returned by the root finder
  std::size_t failures = 0;   // roots rejected by the residual certificate
};

inline constexpr double kRootResidualTolerance = 1e-10;

AmoebaSample amoeba_sample_serial(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid = {});
/// Same output as the serial version (same order), with grid lines distributed over OpenMP threads.
AmoebaSample amoeba_sample_parallel(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid = {});
AmoebaSample amoeba_sample(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid = {});

struct NearlyTropicalReport {
  bool ok = false;
  double max_distance = 0;
};

/// Euclidean distance from a point to the tropical hypersurface, exact up to the final square root.
double distance_to_complex(const std::vector<double>& point, const TropicalComplex& trop);

/// Neighbourhood-containment half of the nearly-tropical condition.
NearlyTropicalReport nearly_tropical_check(const AmoebaSample& sample, const TropicalComplex& trop,
                                           const Rational& radius);

}  // namespace syzkit
