#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "syzkit/fibration.hpp"

using namespace syzkit;

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> cz(const RealPoint& p, int k) { return {p[2 * k], p[2 * k + 1]}; }

double angle_diff(double a, double b) {
  double d = std::remainder(a - b, 2 * kPi);
  return std::abs(d);
}

// Base points away from the declared walls and discriminants.
std::vector<double> random_base(const ModelSpace& s, FibrationKind fib, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5), ang(0.3, 2 * kPi - 0.3);
  std::vector<double> b;
  if (fib == FibrationKind::PiG) {
    double b1 = u(rng);
    b.push_back(std::abs(b1) < 0.1 ? 0.5 : b1);
  } else if (fib == FibrationKind::PiH) {
    b.push_back(std::remainder(ang(rng), 2 * kPi));
  } else if (fib == FibrationKind::PiA) {
    b.push_back(u(rng));
  } else {
    b.push_back(std::remainder(ang(rng), 2 * kPi));
  }
  for (int i = 1; i < s.complex_dim(); ++i) b.push_back(u(rng));
  return b;
}

}  // namespace

TEST_CASE("model spaces") {
  auto u4 = milnor_unity(4);
  CHECK(u4.roots.size() == 4);
  CHECK(u4.root_args[0] == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(milnor_fiber({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(milnor_fiber({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(cn_minus_d(0), std::invalid_argument);
  CHECK(parse_fibration("piL") == FibrationKind::PiL);
  CHECK_THROWS_AS(parse_fibration("piX"), std::invalid_argument);
  CHECK_THROWS_AS(require_compatible(cn_minus_d(3), FibrationKind::PiA), std::invalid_argument);
}

TEST_CASE("sample_fiber examples") {
  auto s = milnor_fiber({{0.5, 0.25}});
  auto pts = sample_fiber(s, FibrationKind::PiA, {std::log(2.0), 0.0}, 50);
  REQUIRE(pts.size() == 50);
  for (const auto& p : pts) {
    CHECK(std::abs(cz(p, 0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(cz(p, 1)) == doctest::Approx(std::abs(cz(p, 2))).epsilon(1e-10));
    auto h = cz(p, 1) * cz(p, 2) - (cz(p, 0) - std::complex<double>(0.5, 0.25));
    CHECK(std::abs(h) < 1e-12);
  }
  CHECK_THROWS_AS(sample_fiber(cn_minus_d(3), FibrationKind::PiG, {0.0, 0.3, 0.1}, 10), std::invalid_argument);
  CHECK_THROWS_AS(sample_fiber(cn_minus_d(3), FibrationKind::PiG, {0.5, 0.3}, 10), std::invalid_argument);
  CHECK_THROWS_AS(sample_fiber(milnor_unity(3), FibrationKind::PiL, {2 * kPi / 3, 0.0}, 10), std::invalid_argument);
  CHECK_THROWS_AS(sample_fiber(milnor_unity(2), FibrationKind::PiA, {0.0, 0.0}, 10), std::invalid_argument);
  CHECK_THROWS_AS(sample_fiber(cn_minus_d(2), FibrationKind::PiG, {800.0, 0.0}, 10), std::runtime_error);
}

TEST_CASE("sampled points lie on the requested fiber; serial equals parallel") {
  std::mt19937_64 rng(5);
  struct Case {
    ModelSpace s;
    FibrationKind f;
  };
  std::vector<Case> cases{{cn_minus_d(3), FibrationKind::PiG}, {cn_minus_d(3), FibrationKind::PiH},
                          {cn_minus_d(2), FibrationKind::PiG}, {milnor_unity(2), FibrationKind::PiA},
                          {milnor_unity(3), FibrationKind::PiL}, {milnor_unity(4), FibrationKind::P0}};
  for (const auto& c : cases) {
    for (int fiber = 0; fiber < 5; ++fiber) {
      std::vector<double> b = c.f == FibrationKind::P0 ? std::vector<double>{0.3, -0.7} : random_base(c.s, c.f, rng);
      auto a = sample_fiber_serial(c.s, c.f, b, 40, 9);
      auto p = sample_fiber_parallel(c.s, c.f, b, 40, 9);
      CHECK(a == p);
      for (const auto& pt : a) {
        auto v = fibration_value(c.s, c.f, pt);
        for (std::size_t i = 0; i < b.size(); ++i) {
          bool angular = i == 0 && (c.f == FibrationKind::PiH || c.f == FibrationKind::PiL);
          CHECK((angular ? angle_diff(v[i], b[i]) : std::abs(v[i] - b[i])) < 1e-8);
        }
        for (double e : equation_value(c.s, pt)) CHECK(std::abs(e) < 1e-10);
      }
    }
  }
}

TEST_CASE("Lagrangian residuals on regular fibers") {
  std::mt19937_64 rng(17);
  struct Case {
    ModelSpace s;
    FibrationKind f;
  };
  std::vector<Case> cases{{cn_minus_d(3), FibrationKind::PiG}, {cn_minus_d(3), FibrationKind::PiH},
                          {milnor_unity(2), FibrationKind::PiA}, {milnor_unity(2), FibrationKind::PiL},
                          {milnor_unity(4), FibrationKind::PiL}};
  for (const auto& c : cases) {
    for (int fiber = 0; fiber < 10; ++fiber) {
      auto b = random_base(c.s, c.f, rng);
      auto r = lagrangian_residual(c.s, c.f, b, 100, fiber + 1);
      CHECK(r.points == 100);
      CHECK(r.max_omega < 1e-8);
      CHECK(r.rank_deficient == 0);
      CHECK(r.max_annihilation < 1e-8);
    }
  }
  auto s = milnor_unity(2);
  auto a = lagrangian_residual_serial(s, FibrationKind::PiA, {0.4, 0.2}, 30, 3);
  auto b = lagrangian_residual_parallel(s, FibrationKind::PiA, {0.4, 0.2}, 30, 3);
  CHECK(a.max_omega == b.max_omega);
  CHECK(a.rank_deficient == b.rank_deficient);

  // conic fibers of p0 are symplectic: large residual
  auto conic = lagrangian_residual(s, FibrationKind::P0, {0.3, 0.4}, 20);
  CHECK(conic.max_omega > 1e-2);

  auto pts = sample_fiber(s, FibrationKind::PiA, {0.4, 0.2}, 3);
  auto frame = tangent_frame(s, FibrationKind::PiA, pts[0]);
  CHECK(frame.vectors.size() == 2);
  for (const auto& t : frame.vectors) CHECK(omega(t, t) == 0.0);
  CHECK(omega(frame.vectors[0], frame.vectors[1]) == doctest::Approx(-omega(frame.vectors[1], frame.vectors[0])));

  // at the singular point of a pi_L fiber the Jacobian drops rank
  RealPoint sing(6, 0.0);
  sing[0] = s.roots[0].real();
  sing[1] = s.roots[0].imag();
  CHECK(tangent_frame(s, FibrationKind::PiL, sing).rank_deficient);
}

TEST_CASE("twin intersections") {
  auto c3 = cn_minus_d(3);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    auto bG = random_base(c3, FibrationKind::PiG, rng);
    auto bH = random_base(c3, FibrationKind::PiH, rng);
    for (int i = 1; i < 3; ++i) bH[i] = bG[i];
    auto t = twin_intersection(c3, bG, bH);
    CHECK_FALSE(t.empty);
    CHECK(t.dim == 2);
    CHECK(t.index == 1);
    CHECK(t.is_clean);
    CHECK(t.orbit_defect < 1e-8);
  }
  auto m = milnor_unity(3);
  for (int k = 0; k < 10; ++k) {
    auto bA = random_base(m, FibrationKind::PiA, rng);
    auto bL = random_base(m, FibrationKind::PiL, rng);
    bL[1] = bA[1];
    auto t = twin_intersection(m, bA, bL);
    CHECK(t.dim == 1);
    CHECK(t.index == 1);
    CHECK(t.is_clean);
    CHECK(t.orbit_defect < 1e-8);
  }
  CHECK(twin_intersection(m, {0.2, 0.5}, {1.0, 0.7}).empty);
  CHECK(twin_intersection(c3, {0.2, 0.5, 0.1}, {1.0, 0.5, 0.2}).empty);
  CHECK_THROWS_AS(twin_intersection(m, {0.0, 0.0}, {2 * kPi / 3, 0.0}), std::invalid_argument);
}

TEST_CASE("commuting diagrams") {
  CHECK(commuting_diagram_check(cn_minus_d(3), 1000) < 1e-12);
  CHECK(commuting_diagram_check(milnor_unity(3), 1000) < 1e-12);
  CHECK(commuting_diagram_check(cn_minus_d(3), 1000, 1, {2, 1}, {1, 2}) > 0.1);
  CHECK(commuting_diagram_check(milnor_unity(3), 1000, 1, {0}, {1}) > 0.1);
  CHECK_THROWS_AS(commuting_diagram_check(milnor_unity(3), 10, 1, {5}, {1}), std::invalid_argument);
}

TEST_CASE("singular rays") {
  auto r4 = singular_rays(milnor_unity(4));
  REQUIRE(r4.rays.size() == 4);
  std::vector<double> expect{kPi / 2, kPi, 3 * kPi / 2, 2 * kPi};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(r4.rays[j].arg == doctest::Approx(expect[j]));
    CHECK(r4.rays[j].degenerate_orbit);
  }
  CHECK(r4.generic);
  auto r1 = singular_rays(milnor_fiber({1.0}));
  REQUIRE(r1.rays.size() == 1);
  CHECK(r1.rays[0].arg == 0.0);
  CHECK(r1.rays[0].degenerate_orbit);
  CHECK_FALSE(singular_rays(milnor_fiber({1.0, 2.0})).generic);
  CHECK_THROWS_AS(singular_rays(cn_minus_d(2)), std::invalid_argument);
}

TEST_CASE("group invariance") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {5, 3}, {1, 1}}) {
    auto g = group_invariance_check(p, q);
    CHECK(g.piA_invariant);
    CHECK(g.piL_equivariant);
    CHECK(g.equation_preserved);
  }
  auto fake = group_invariance_check(3, 2, Rational(2));
  CHECK_FALSE(fake.piA_invariant);
  CHECK_FALSE(fake.piL_equivariant);
  CHECK_FALSE(fake.equation_preserved);
  CHECK_THROWS_AS(group_invariance_check(4, 2), std::invalid_argument);
}
