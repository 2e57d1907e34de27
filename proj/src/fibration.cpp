#include "syzkit/fibration.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace syzkit {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kBaseEps = 1e-12;

double wrap(double a) {
  a = std::remainder(a, 2 * kPi);
  return a <= -kPi ? a + 2 * kPi : a;
}

cd coord(const RealPoint& p, int k) { return {p[2 * k], p[2 * k + 1]}; }

void set_coord(RealPoint& p, int k, cd z) {
  p[2 * k] = z.real();
  p[2 * k + 1] = z.imag();
}

cd product(const RealPoint& p, int n) {
  cd w = 1;
  for (int k = 0; k < n; ++k) w *= coord(p, k);
  return w;
}

cd milnor_rhs(const ModelSpace& s, cd x) {
  cd c = 1;
  for (const auto& r : s.roots) c *= x - r;
  return c;
}

bool is_angle(FibrationKind fib, std::size_t component) {
  return component == 0 && (fib == FibrationKind::PiH || fib == FibrationKind::PiL);
}

std::size_t equation_count(const ModelSpace& s) { return s.kind == SpaceKind::MilnorFiber ? 2 : 0; }

std::mt19937_64 point_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index), std::uint64_t{0x5eed}};
  return std::mt19937_64(seq);
}

using VecFn = std::function<std::vector<double>(const RealPoint&)>;

// Central differences; `f` should return values near zero at p so angle wrapping is harmless.
Eigen::MatrixXd numeric_jacobian(const VecFn& f, const RealPoint& p) {
  std::size_t rows = f(p).size();
  Eigen::MatrixXd J(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    double h = kDiffStep * std::max(1.0, std::abs(p[i]));
    RealPoint a = p, b = p;
    a[i] += h;
    b[i] -= h;
    auto fa = f(a), fb = f(b);
    for (std::size_t r = 0; r < rows; ++r) J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = (fa[r] - fb[r]) / (2 * h);
  }
  return J;
}

std::size_t numeric_rank(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd) {
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankThreshold * s(0)) ++r;
  return r;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Moduli t_k = |z_k|^2 with t_k - t_{k+1} = 2 mu_k and prod t_k = |w|^2.
std::vector<double> cn_moduli(const std::vector<double>& mu, double w_abs2) {
  const std::size_t n = mu.size() + 1;
  std::vector<double> s(n, 0.0);
  for (std::size_t k = n - 1; k-- > 0;) s[k] = s[k + 1] + 2 * mu[k];
  double lo = 0;
  for (double x : s) lo = std::max(lo, -x);
  auto f = [&](double tn) {
    double prod = 1;
    for (double x : s) prod *= tn + x;
    return prod;
  };
  double hi = lo + 1;
  while (f(hi) < w_abs2) hi = lo + 2 * (hi - lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < w_abs2) lo = mid;
    else hi = mid;
  }
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = std::max(0.0, hi + s[k]);
  return t;
}

RealPoint cn_point(int n, cd w, const std::vector<double>& mu, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0, 2 * kPi);
  RealPoint p(2 * static_cast<std::size_t>(n), 0.0);
  auto t = cn_moduli(mu, std::norm(w));
  double total = 0;
  for (int k = 0; k + 1 < n; ++k) {
    double th = phase(rng);
    total += th;
    set_coord(p, k, std::polar(std::sqrt(t[k]), th));
  }
  set_coord(p, n - 1, std::polar(std::sqrt(t[n - 1]), std::arg(w) - total));
  return p;
}

RealPoint milnor_point(const ModelSpace& s, cd x, double lambda, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0, 2 * kPi);
  cd c = milnor_rhs(s, x);
  double sy = lambda + std::sqrt(lambda * lambda + std::norm(c));
  cd y, z;
  double ph = phase(rng);
  if (sy > 0) {
    y = std::polar(std::sqrt(sy), ph);
    z = c / y;
  } else {
    y = 0;
    z = std::polar(std::sqrt(std::max(0.0, -2 * lambda)), ph);
  }
  RealPoint p(6);
  set_coord(p, 0, x);
  set_coord(p, 1, y);
  set_coord(p, 2, z);
  return p;
}

RealPoint seed_point(const ModelSpace& s, FibrationKind fib, const std::vector<double>& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0, 2 * kPi);
  std::uniform_real_distribution<double> logr(-1, 1);
  switch (fib) {
    case FibrationKind::PiG:
      return cn_point(s.n, std::polar(std::exp(b[0]), phase(rng)) - 1.0, {b.begin() + 1, b.end()}, rng);
    case FibrationKind::PiH:
      return cn_point(s.n, std::polar(std::exp(logr(rng)), b[0]) - 1.0, {b.begin() + 1, b.end()}, rng);
    case FibrationKind::PiA:
      return milnor_point(s, std::polar(std::exp(b[0]), phase(rng)), b[1], rng);
    case FibrationKind::PiL:
      return milnor_point(s, std::polar(std::exp(logr(rng)), b[0]), b[1], rng);
    case FibrationKind::P0: {
      cd x(b[0], b[1]);
      cd c = milnor_rhs(s, x);
      cd y = std::polar(std::exp(logr(rng)), phase(rng));
      RealPoint p(6);
      set_coord(p, 0, x);
      set_coord(p, 1, y);
      set_coord(p, 2, c / y);
      return p;
    }
  }
  throw std::logic_error("seed_point: unknown fibration");
}

// Gauss-Newton projection onto the constraint set (minimum-norm steps).
RealPoint project(const ModelSpace& s, FibrationKind fib, RealPoint p, const std::vector<double>& b) {
  VecFn f = [&](const RealPoint& q) { return constraint_value(s, fib, q, b); };
  for (int it = 0; it < 8; ++it) {
    auto r = f(p);
    if (max_abs(r) < 1e-14) break;
    Eigen::MatrixXd J = numeric_jacobian(f, p);
    Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
    Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(rv);
    RealPoint q = p;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= step(static_cast<Eigen::Index>(i));
    if (max_abs(f(q)) >= max_abs(r)) break;
    p = std::move(q);
  }
  return p;
}

std::optional<RealPoint> sample_one(const ModelSpace& s, FibrationKind fib, const std::vector<double>& b,
                                    std::uint64_t seed, std::size_t index) {
  auto rng = point_rng(seed, index);
  RealPoint p = project(s, fib, seed_point(s, fib, b, rng), b);
  if (max_abs(constraint_value(s, fib, p, b)) < kSampleTolerance) return p;
  return std::nullopt;
}

std::vector<RealPoint> finish_sampling(const ModelSpace& s, FibrationKind fib, const std::vector<double>& b,
                                       std::size_t k, std::uint64_t seed, std::vector<std::optional<RealPoint>>& first) {
  std::vector<RealPoint> out;
  std::size_t failures = 0;
  for (auto& p : first) {
    if (p) out.push_back(std::move(*p));
    else ++failures;
  }
  if (k > 0 && 10 * failures > k) {
    std::ostringstream msg;
    msg << "sample_fiber: projection failed for " << failures << " of " << k << " points on " << s.name() << " / "
        << to_string(fib) << " at b = (";
    for (std::size_t i = 0; i < b.size(); ++i) msg << (i ? ", " : "") << b[i];
    msg << ")";
    throw std::runtime_error(msg.str());
  }
  for (std::size_t idx = k; out.size() < k && idx < 2 * k; ++idx)
    if (auto p = sample_one(s, fib, b, seed, idx)) out.push_back(std::move(*p));
  if (out.size() < k) throw std::runtime_error("sample_fiber: could not complete the sample");
  return out;
}

void prepare_sampling(const ModelSpace& s, FibrationKind fib, const std::vector<double>& b) {
  require_compatible(s, fib);
  check_base_point(s, fib, b);
}

}  // namespace

std::string ModelSpace::name() const {
  if (kind == SpaceKind::CnMinusD) return "C^" + std::to_string(n) + " minus D";
  return "Milnor fiber (p=" + std::to_string(roots.size()) + ")";
}

ModelSpace cn_minus_d(int n) {
  if (n < 1) throw std::invalid_argument("cn_minus_d: n must be positive");
  ModelSpace s;
  s.kind = SpaceKind::CnMinusD;
  s.n = n;
  return s;
}

ModelSpace milnor_fiber(std::vector<std::complex<double>> roots) {
  if (roots.empty()) throw std::invalid_argument("milnor_fiber: need at least one root");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(roots[i]) < kBaseEps) throw std::invalid_argument("milnor_fiber: roots must be nonzero");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(roots[i] - roots[j]) < kBaseEps) throw std::invalid_argument("milnor_fiber: roots must be distinct");
  }
  ModelSpace s;
  s.kind = SpaceKind::MilnorFiber;
  s.n = 2;
  s.roots = std::move(roots);
  for (const auto& r : s.roots) {
    double a = std::arg(r);
    s.root_args.push_back(a < 0 ? a + 2 * kPi : a);
  }
  return s;
}

ModelSpace milnor_unity(int p) {
  if (p < 1) throw std::invalid_argument("milnor_unity: p must be positive");
  std::vector<cd> roots;
  for (int j = 1; j <= p; ++j) roots.push_back(std::polar(1.0, 2 * kPi * j / p));
  ModelSpace s = milnor_fiber(roots);
  for (int j = 1; j <= p; ++j) s.root_args[static_cast<std::size_t>(j - 1)] = 2 * kPi * j / p;
  return s;
}

std::string to_string(FibrationKind k) {
  switch (k) {
    case FibrationKind::PiG: return "piG";
    case FibrationKind::PiH: return "piH";
    case FibrationKind::PiA: return "piA";
    case FibrationKind::PiL: return "piL";
    case FibrationKind::P0: return "p0";
  }
  return "?";
}

FibrationKind parse_fibration(const std::string& name) {
  for (auto k : {FibrationKind::PiG, FibrationKind::PiH, FibrationKind::PiA, FibrationKind::PiL, FibrationKind::P0})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown fibration '" + name + "'");
}

void require_compatible(const ModelSpace& space, FibrationKind fib) {
  bool cn = fib == FibrationKind::PiG || fib == FibrationKind::PiH;
  if (cn != (space.kind == SpaceKind::CnMinusD))
    throw std::invalid_argument("fibration " + to_string(fib) + " is not defined on " + space.name());
}

std::vector<double> fibration_value(const ModelSpace& space, FibrationKind fib, const RealPoint& p) {
  std::vector<double> out;
  if (space.kind == SpaceKind::CnMinusD) {
    cd w1 = product(p, space.n) + 1.0;
    out.push_back(fib == FibrationKind::PiG ? std::log(std::abs(w1)) : std::arg(w1));
    for (int k = 0; k + 1 < space.n; ++k) out.push_back((std::norm(coord(p, k)) - std::norm(coord(p, k + 1))) / 2);
    return out;
  }
  cd x = coord(p, 0), y = coord(p, 1), z = coord(p, 2);
  double lambda = (std::norm(y) - std::norm(z)) / 2;
  switch (fib) {
    case FibrationKind::PiA: return {std::log(std::abs(x)), lambda};
    case FibrationKind::PiL: return {std::arg(x), lambda};
    case FibrationKind::P0: return {x.real(), x.imag()};
    default: break;
  }
  throw std::invalid_argument("fibration_value: fibration does not match the space");
}

std::vector<double> equation_value(const ModelSpace& space, const RealPoint& p) {
  if (space.kind == SpaceKind::CnMinusD) return {};
  cd h = coord(p, 1) * coord(p, 2) - milnor_rhs(space, coord(p, 0));
  return {h.real(), h.imag()};
}

std::vector<double> constraint_value(const ModelSpace& space, FibrationKind fib, const RealPoint& p,
                                     const std::vector<double>& b) {
  auto out = equation_value(space, p);
  auto v = fibration_value(space, fib, p);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(is_angle(fib, i) ? wrap(v[i] - b[i]) : v[i] - b[i]);
  return out;
}

void check_base_point(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b) {
  require_compatible(space, fib);
  if (static_cast<int>(b.size()) != space.complex_dim())
    throw std::invalid_argument("base point has " + std::to_string(b.size()) + " coordinates, expected " +
                                std::to_string(space.complex_dim()));
  for (double x : b)
    if (!std::isfinite(x)) throw std::invalid_argument("base point is not finite");
  switch (fib) {
    case FibrationKind::PiG:
      if (std::abs(b[0]) < kBaseEps) throw std::invalid_argument("base point lies on the wall b1 = 0");
      return;
    case FibrationKind::PiH:
      if (std::abs(wrap(b[0])) < kBaseEps) throw std::invalid_argument("base point lies on the discriminant ray arg(w+1) = 0");
      return;
    case FibrationKind::PiA:
      for (const auto& r : space.roots)
        if (std::abs(b[1]) < kBaseEps && std::abs(b[0] - std::log(std::abs(r))) < kBaseEps)
          throw std::invalid_argument("base point lies on the discriminant (log|r_j|, 0)");
      return;
    case FibrationKind::PiL:
      for (double a : space.root_args)
        if (std::abs(b[1]) < kBaseEps && std::abs(wrap(b[0] - a)) < kBaseEps)
          throw std::invalid_argument("base point lies on the discriminant (arg r_j, 0)");
      return;
    case FibrationKind::P0:
      for (const auto& r : space.roots)
        if (std::abs(cd(b[0], b[1]) - r) < kBaseEps) throw std::invalid_argument("base point is a critical value r_j of p0");
      return;
  }
}

std::vector<RealPoint> sample_fiber_serial(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                           std::size_t k, std::uint64_t seed) {
  prepare_sampling(space, fib, b);
  std::vector<std::optional<RealPoint>> first(k);
  for (std::size_t i = 0; i < k; ++i) first[i] = sample_one(space, fib, b, seed, i);
  return finish_sampling(space, fib, b, k, seed, first);
}

std::vector<RealPoint> sample_fiber_parallel(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                             std::size_t k, std::uint64_t seed) {
  prepare_sampling(space, fib, b);
  std::vector<std::optional<RealPoint>> first(k);
  const long n = static_cast<long>(k);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) first[static_cast<std::size_t>(i)] = sample_one(space, fib, b, seed, static_cast<std::size_t>(i));
  return finish_sampling(space, fib, b, k, seed, first);
}

std::vector<RealPoint> sample_fiber(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                    std::size_t k, std::uint64_t seed) {
  return sample_fiber_parallel(space, fib, b, k, seed);
}

std::vector<std::vector<double>> constraint_jacobian(const ModelSpace& space, FibrationKind fib, const RealPoint& p) {
  auto b = fibration_value(space, fib, p);
  Eigen::MatrixXd J = numeric_jacobian([&](const RealPoint& q) { return constraint_value(space, fib, q, b); }, p);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(J.rows()), std::vector<double>(static_cast<std::size_t>(J.cols())));
  for (Eigen::Index r = 0; r < J.rows(); ++r)
    for (Eigen::Index c = 0; c < J.cols(); ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = J(r, c);
  return out;
}

TangentFrame tangent_frame(const ModelSpace& space, FibrationKind fib, const RealPoint& p) {
  auto b = fibration_value(space, fib, p);
  Eigen::MatrixXd J = numeric_jacobian([&](const RealPoint& q) { return constraint_value(space, fib, q, b); }, p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  TangentFrame f;
  f.base = p;
  f.rank = numeric_rank(svd);
  f.expected_rank = equation_count(space) + static_cast<std::size_t>(space.complex_dim());
  f.rank_deficient = f.rank < f.expected_rank;
  const auto& V = svd.matrixV();
  for (Eigen::Index c = static_cast<Eigen::Index>(f.rank); c < V.cols(); ++c) {
    Eigen::VectorXd t = V.col(c);
    f.max_annihilation = std::max(f.max_annihilation, (J * t).cwiseAbs().maxCoeff());
    f.vectors.emplace_back(t.data(), t.data() + t.size());
  }
  return f;
}

double omega(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t k = 0; k + 1 < u.size(); k += 2) s += u[k] * v[k + 1] - u[k + 1] * v[k];
  return s;
}

namespace {

struct FrameStats {
  double max_omega = 0;
  bool deficient = false;
  double annihilation = 0;
};

FrameStats frame_stats(const ModelSpace& space, FibrationKind fib, const RealPoint& p) {
  auto f = tangent_frame(space, fib, p);
  FrameStats s{0, f.rank_deficient, f.max_annihilation};
  for (std::size_t i = 0; i < f.vectors.size(); ++i)
    for (std::size_t j = i + 1; j < f.vectors.size(); ++j)
      s.max_omega = std::max(s.max_omega, std::abs(omega(f.vectors[i], f.vectors[j])));
  return s;
}

}  // namespace

ResidualReport lagrangian_residual_serial(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                          std::size_t k, std::uint64_t seed) {
  auto pts = sample_fiber_serial(space, fib, b, k, seed);
  ResidualReport r;
  r.points = pts.size();
  for (const auto& p : pts) {
    auto s = frame_stats(space, fib, p);
    r.max_omega = std::max(r.max_omega, s.max_omega);
    r.max_annihilation = std::max(r.max_annihilation, s.annihilation);
    if (s.deficient) ++r.rank_deficient;
  }
  return r;
}

ResidualReport lagrangian_residual_parallel(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                            std::size_t k, std::uint64_t seed) {
  auto pts = sample_fiber_parallel(space, fib, b, k, seed);
  double max_omega = 0, max_ann = 0;
  std::size_t deficient = 0;
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static) reduction(max : max_omega, max_ann) reduction(+ : deficient)
  for (long i = 0; i < n; ++i) {
    auto s = frame_stats(space, fib, pts[static_cast<std::size_t>(i)]);
    max_omega = std::max(max_omega, s.max_omega);
    max_ann = std::max(max_ann, s.annihilation);
    if (s.deficient) ++deficient;
  }
  return {max_omega, pts.size(), deficient, max_ann};
}

ResidualReport lagrangian_residual(const ModelSpace& space, FibrationKind fib, const std::vector<double>& b,
                                   std::size_t k, std::uint64_t seed) {
  return lagrangian_residual_parallel(space, fib, b, k, seed);
}

TwinIntersection twin_intersection(const ModelSpace& space, const std::vector<double>& b, const std::vector<double>& b_star,
                                   std::size_t samples, std::uint64_t seed) {
  const bool cn = space.kind == SpaceKind::CnMinusD;
  const FibrationKind f1 = cn ? FibrationKind::PiG : FibrationKind::PiA;
  const FibrationKind f2 = cn ? FibrationKind::PiH : FibrationKind::PiL;
  check_base_point(space, f1, b);
  check_base_point(space, f2, b_star);
  TwinIntersection out;
  for (std::size_t i = 1; i < b.size(); ++i)
    if (std::abs(b[i] - b_star[i]) > kBaseEps) {
      out.empty = true;
      return out;
    }
  const int n = space.complex_dim();
  VecFn joint = [&](const RealPoint& q) {
    auto r = constraint_value(space, f1, q, b);
    auto r2 = fibration_value(space, f2, q);
    for (std::size_t i = 0; i < r2.size(); ++i) r.push_back(is_angle(f2, i) ? wrap(r2[i] - b_star[i]) : r2[i] - b_star[i]);
    return r;
  };
  std::uniform_real_distribution<double> phase(0, 2 * kPi);
  std::vector<int> dims;
  bool clean = true;
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = point_rng(seed, s);
    RealPoint p;
    if (cn) {
      p = cn_point(n, std::polar(std::exp(b[0]), b_star[0]) - 1.0, {b.begin() + 1, b.end()}, rng);
    } else {
      cd x = std::polar(std::exp(b[0]), b_star[0]);
      if (std::abs(milnor_rhs(space, x)) < kBaseEps && std::abs(b[1]) < kBaseEps)
        throw std::invalid_argument("twin_intersection: intersection passes through a singular point");
      p = milnor_point(space, x, b[1], rng);
    }
    if (max_abs(joint(p)) >= kSampleTolerance) throw std::runtime_error("twin_intersection: failed to place a point on L and L*");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(numeric_jacobian(joint, p));
    int dim = static_cast<int>(p.size()) - static_cast<int>(numeric_rank(svd));
    dims.push_back(dim);

    // infinitesimal generators of the torus acting on the intersection
    std::vector<Eigen::VectorXd> gens;
    if (cn) {
      for (int k = 0; k + 1 < n; ++k) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.size()));
        cd a = cd(0, 1) * coord(p, k), c = cd(0, -1) * coord(p, k + 1);
        g(2 * k) = a.real();
        g(2 * k + 1) = a.imag();
        g(2 * k + 2) = c.real();
        g(2 * k + 3) = c.imag();
        gens.push_back(g);
      }
    } else {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(6);
      cd a = cd(0, 1) * coord(p, 1), c = cd(0, -1) * coord(p, 2);
      g(2) = a.real();
      g(3) = a.imag();
      g(4) = c.real();
      g(5) = c.imag();
      gens.push_back(g);
    }
    Eigen::MatrixXd G(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i) G.col(static_cast<Eigen::Index>(i)) = gens[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> gsvd(G);
    int orbit = static_cast<int>(numeric_rank(gsvd));
    if (out.orbit_dim < 0) out.orbit_dim = orbit;
    if (orbit != dim || orbit != out.orbit_dim) clean = false;

    // act by a random torus element and re-evaluate the joint constraints
    RealPoint q = p;
    if (cn) {
      for (int k = 0; k + 1 < n; ++k) {
        double th = phase(rng);
        set_coord(q, k, coord(q, k) * std::polar(1.0, th));
        set_coord(q, k + 1, coord(q, k + 1) * std::polar(1.0, -th));
      }
    } else {
      double th = phase(rng);
      set_coord(q, 1, coord(q, 1) * std::polar(1.0, th));
      set_coord(q, 2, coord(q, 2) * std::polar(1.0, -th));
    }
    out.orbit_defect = std::max(out.orbit_defect, max_abs(joint(q)));
  }
  out.samples = samples;
  if (!dims.empty()) {
    out.dim = dims.front();
    if (std::any_of(dims.begin(), dims.end(), [&](int d) { return d != dims.front(); })) clean = false;
    out.index = n - out.dim;
  }
  out.is_clean = clean && !dims.empty();
  return out;
}

double commuting_diagram_check(const ModelSpace& space, std::size_t m, std::uint64_t seed, std::vector<int> phi,
                               std::vector<int> phi_star) {
  const bool cn = space.kind == SpaceKind::CnMinusD;
  const FibrationKind f1 = cn ? FibrationKind::PiG : FibrationKind::PiA;
  const FibrationKind f2 = cn ? FibrationKind::PiH : FibrationKind::PiL;
  const int d = space.complex_dim();
  if (phi.empty()) {
    phi.resize(static_cast<std::size_t>(d - 1));
    std::iota(phi.begin(), phi.end(), 1);
  }
  if (phi_star.empty()) {
    phi_star.resize(static_cast<std::size_t>(d - 1));
    std::iota(phi_star.begin(), phi_star.end(), 1);
  }
  if (phi.size() != phi_star.size()) throw std::invalid_argument("commuting_diagram_check: projections differ in length");
  for (int i : phi)
    if (i < 0 || i >= d) throw std::invalid_argument("commuting_diagram_check: projection index out of range");
  for (int i : phi_star)
    if (i < 0 || i >= d) throw std::invalid_argument("commuting_diagram_check: projection index out of range");
  double defect = 0;
  for (std::size_t s = 0; s < m; ++s) {
    auto rng = point_rng(seed, s);
    std::uniform_real_distribution<double> phase(0, 2 * kPi), logr(-1, 1);
    RealPoint p;
    if (cn) {
      p.assign(2 * static_cast<std::size_t>(d), 0.0);
      for (int k = 0; k < d; ++k) set_coord(p, k, std::polar(std::exp(logr(rng)), phase(rng)));
    } else {
      cd x = std::polar(std::exp(logr(rng)), phase(rng));
      cd y = std::polar(std::exp(logr(rng)), phase(rng));
      p.assign(6, 0.0);
      set_coord(p, 0, x);
      set_coord(p, 1, y);
      set_coord(p, 2, milnor_rhs(space, x) / y);
    }
    auto a = fibration_value(space, f1, p);
    auto b = fibration_value(space, f2, p);
    for (std::size_t i = 0; i < phi.size(); ++i)
      defect = std::max(defect, std::abs(a[static_cast<std::size_t>(phi[i])] - b[static_cast<std::size_t>(phi_star[i])]));
  }
  return defect;
}

SingularRays singular_rays(const ModelSpace& space) {
  if (space.kind != SpaceKind::MilnorFiber) throw std::invalid_argument("singular_rays: needs a Milnor fiber");
  SingularRays out;
  for (std::size_t j = 0; j < space.roots.size(); ++j) {
    SingularRay ray{j, space.root_args[j], false};
    RealPoint p(6, 0.0);
    set_coord(p, 0, space.roots[j]);
    auto v = fibration_value(space, FibrationKind::PiL, p);
    bool on_ray = max_abs(equation_value(space, p)) < kSampleTolerance && std::abs(wrap(v[0] - ray.arg)) < kBaseEps &&
                  std::abs(v[1]) < kBaseEps;
    bool collapsed = std::abs(coord(p, 1)) == 0 && std::abs(coord(p, 2)) == 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(numeric_jacobian(
        [&](const RealPoint& q) { return constraint_value(space, FibrationKind::PiL, q, v); }, p));
    bool deficient = numeric_rank(svd) < 4;
    ray.degenerate_orbit = on_ray && collapsed && deficient;
    out.rays.push_back(ray);
  }
  for (std::size_t i = 0; i < out.rays.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(wrap(out.rays[i].arg - out.rays[j].arg)) < kBaseEps) out.generic = false;
  return out;
}

GroupInvariance group_invariance_check(int p, int q, const Rational& modulus, std::size_t samples, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("group_invariance_check: p must be positive");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("group_invariance_check: gcd(p, q) must be 1");
  if (sgn(modulus) <= 0) throw std::invalid_argument("group_invariance_check: modulus must be positive");
  GroupInvariance out;
  auto rpow = [](const Rational& r, long k) {
    Rational acc = 1;
    Rational base = k < 0 ? Rational(1) / r : r;
    for (long i = 0; i < std::labs(k); ++i) acc *= base;
    return acc;
  };
  // |xi^q x| = |x| and |xi y|^2 - |xi^{-1} z|^2 = |y|^2 - |z|^2 for all x, y, z
  out.piA_invariant = rpow(modulus, q) == 1 && rpow(modulus, 2) == 1 && rpow(modulus, -2) == 1;
  // (xi^q x)^p - 1 = xi^{pq} x^p - 1 with xi = modulus * e^{2 pi i/p}: the phase is e^{2 pi i q}
  out.equation_preserved = rpow(modulus, static_cast<long>(p) * q) == 1;

  ModelSpace space = milnor_unity(p);
  const cd xi = std::polar(to_double(modulus), 2 * kPi / p);
  const cd xiq = std::pow(xi, q);
  const double shift = 2 * kPi * q / p;
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = point_rng(seed, s);
    std::uniform_real_distribution<double> phase(0, 2 * kPi), lam(-2, 2);
    std::vector<double> b{wrap(phase(rng)), lam(rng)};
    RealPoint pt = project(space, FibrationKind::PiL, seed_point(space, FibrationKind::PiL, b, rng), b);
    RealPoint img = pt;
    set_coord(img, 0, xiq * coord(pt, 0));
    set_coord(img, 1, xi * coord(pt, 1));
    set_coord(img, 2, coord(pt, 2) / xi);
    auto v0 = fibration_value(space, FibrationKind::PiL, pt);
    auto v1 = fibration_value(space, FibrationKind::PiL, img);
    double scale = 1 + std::norm(coord(img, 1)) + std::pow(std::abs(coord(img, 0)), p);
    double d = std::max({std::abs(wrap(v1[0] - v0[0] - shift)), std::abs(v1[1] - v0[1]),
                         max_abs(equation_value(space, img)) / scale});
    out.max_defect = std::max(out.max_defect, d);
  }
  out.piL_equivariant = out.max_defect < 1e-8;
  return out;
}

}  // namespace syzkit
