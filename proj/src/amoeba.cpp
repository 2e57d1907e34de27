#include "syzkit/amoeba.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace syzkit {

double normalized_residual(const std::vector<std::complex<double>>& coeffs, std::complex<double> x) {
  std::complex<double> p = 0;
  double scale = 0;
  double ax = std::abs(x);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    p = p * x + coeffs[k];
    scale = scale * ax + std::abs(coeffs[k]);
  }
  return scale == 0 ? 0 : std::abs(p) / scale;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs) {
  double cmax = 0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0) throw std::invalid_argument("polynomial_roots: zero polynomial");
  std::size_t hi = coeffs.size();
  while (hi > 0 && std::abs(coeffs[hi - 1]) <= 1e-14 * cmax) --hi;
  std::size_t lo = 0;
  while (lo < hi && std::abs(coeffs[lo]) <= 1e-14 * cmax) ++lo;
  if (hi - lo <= 1) return {};
  std::vector<std::complex<double>> a(coeffs.begin() + lo, coeffs.begin() + hi);
  const std::size_t n = a.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) companion(i, n - 1) = -a[i] / a[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> x = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      std::complex<double> p = 0, dp = 0;
      for (std::size_t k = a.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + a[k];
      }
      if (dp == 0.0) break;
      std::complex<double> step = p / dp;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    roots.push_back(x);
  }
  return roots;
}

namespace {

struct LineResult {
  std::vector<std::vector<double>> points;
  std::size_t attempted = 0;
  std::size_t failures = 0;
};

struct Prepared {
  int dim;
  double tau;
  double log_tau_abs;
  std::vector<std::complex<double>> coeff;  // c_alpha tau^rho(alpha)
  const WeightedPointSet* w;
};

Prepared prepare(const WeightedPointSet& w, const Rational& tau) {
  w.validate();
  if (sgn(tau) <= 0 || tau >= 1) throw std::invalid_argument("amoeba_sample: tau must lie in (0,1)");
  if (w.dim() != 1 && w.dim() != 2) throw std::invalid_argument("amoeba_sample: dimension must be 1 or 2");
  Prepared p{w.dim(), to_double(tau), std::abs(std::log(to_double(tau))), {}, &w};
  for (std::size_t a = 0; a < w.A.size(); ++a)
    p.coeff.emplace_back(to_double(w.c[a]) * std::pow(p.tau, to_double(w.rho[a])));
  return p;
}

// Univariate polynomial in the last coordinate with the first one fixed (x1 unused in dimension 1).
std::vector<std::complex<double>> univariate(const Prepared& p, std::complex<double> x1) {
  const auto& A = p.w->A;
  const int last = p.dim - 1;
  long kmin = A.front()[last], kmax = kmin;
  for (const auto& a : A) {
    kmin = std::min(kmin, a[last]);
    kmax = std::max(kmax, a[last]);
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(kmax - kmin + 1), 0.0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::complex<double> c = p.coeff[i];
    if (p.dim == 2) c *= std::pow(x1, static_cast<int>(A[i][0]));
    out[static_cast<std::size_t>(A[i][last] - kmin)] += c;
  }
  return out;
}

LineResult sample_line(const Prepared& p, const AmoebaGrid& grid, std::size_t line) {
  LineResult r;
  auto solve_at = [&](std::complex<double> x1, double u) {
    auto poly = univariate(p, x1);
    double cmax = 0;
    for (const auto& c : poly) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0) return;
    for (const auto& x : polynomial_roots(poly)) {
      ++r.attempted;
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || x == 0.0 ||
          normalized_residual(poly, x) >= kRootResidualTolerance) {
        ++r.failures;
        continue;
      }
      double v = std::log(std::abs(x)) / p.log_tau_abs;
      if (p.dim == 1) r.points.push_back({v});
      else r.points.push_back({u, v});
    }
  };
  if (p.dim == 1) {
    solve_at(0.0, 0.0);
    return r;
  }
  double u = grid.lines == 1 ? grid.lo : grid.lo + (grid.hi - grid.lo) * static_cast<double>(line) / (grid.lines - 1);
  double modulus = std::pow(p.tau, -u);
  for (std::size_t j = 0; j < grid.angles; ++j) {
    double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid.angles);
    solve_at(std::polar(modulus, theta), u);
  }
  return r;
}

AmoebaSample assemble(const Prepared& p, const AmoebaGrid& grid, std::vector<LineResult>& lines) {
  AmoebaSample s;
  s.dim = p.dim;
  s.tau = p.tau;
  s.grid = grid;
  for (auto& l : lines) {
    s.attempted += l.attempted;
    s.failures += l.failures;
    for (auto& pt : l.points) s.points.push_back(std::move(pt));
  }
  return s;
}

}  // namespace

AmoebaSample amoeba_sample_serial(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid) {
  Prepared p = prepare(w, tau);
  std::size_t n = p.dim == 1 ? 1 : grid.lines;
  std::vector<LineResult> lines(n);
  for (std::size_t i = 0; i < n; ++i) lines[i] = sample_line(p, grid, i);
  return assemble(p, grid, lines);
}

AmoebaSample amoeba_sample_parallel(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid) {
  Prepared p = prepare(w, tau);
  const long n = p.dim == 1 ? 1 : static_cast<long>(grid.lines);
  std::vector<LineResult> lines(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) lines[static_cast<std::size_t>(i)] = sample_line(p, grid, static_cast<std::size_t>(i));
  return assemble(p, grid, lines);
}

AmoebaSample amoeba_sample(const WeightedPointSet& w, const Rational& tau, const AmoebaGrid& grid) {
  return amoeba_sample_parallel(w, tau, grid);
}

namespace {

Rational sq_norm(const QVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

QVector sub(const QVector& a, const QVector& b) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational dotq(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Squared distance from x to the set {a + t d : t in [0, tmax]} (tmax < 0 means unbounded).
Rational sq_dist_segment(const QVector& x, const QVector& a, const QVector& d, bool bounded) {
  Rational dd = sq_norm(d);
  if (sgn(dd) == 0) return sq_norm(sub(x, a));
  Rational t = dotq(sub(x, a), d) / dd;
  if (sgn(t) < 0) t = 0;
  if (bounded && t > 1) t = 1;
  QVector proj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) proj[i] = a[i] + t * d[i];
  return sq_norm(sub(x, proj));
}

}  // namespace

double distance_to_complex(const std::vector<double>& point, const TropicalComplex& trop) {
  if (static_cast<int>(point.size()) != trop.dim) throw std::invalid_argument("distance_to_complex: dimension mismatch");
  QVector x;
  for (double v : point) x.push_back(rational_from_double(v));
  std::optional<Rational> best;
  auto consider = [&](const Rational& d2) {
    if (!best || d2 < *best) best = d2;
  };
  for (const auto& v : trop.vertices) consider(sq_norm(sub(x, v)));
  for (const auto& e : trop.edges) {
    const QVector& a = trop.vertices[e.from];
    if (e.to) consider(sq_dist_segment(x, a, sub(trop.vertices[*e.to], a), true));
    else consider(sq_dist_segment(x, a, e.direction, false));
  }
  if (!best) return std::numeric_limits<double>::infinity();
  return std::sqrt(to_double(*best));
}

NearlyTropicalReport nearly_tropical_check(const AmoebaSample& sample, const TropicalComplex& trop,
                                           const Rational& radius) {
  if (sample.points.empty()) throw std::invalid_argument("nearly_tropical_check: empty sample");
  if (sample.dim != trop.dim) throw std::invalid_argument("nearly_tropical_check: dimension mismatch");
  NearlyTropicalReport r;
  for (const auto& p : sample.points) r.max_distance = std::max(r.max_distance, distance_to_complex(p, trop));
  r.ok = r.max_distance <= to_double(radius);
  return r;
}

}  // namespace syzkit
