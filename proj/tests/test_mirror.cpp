#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "syzkit/mirror.hpp"

using namespace syzkit;

namespace {

Fan c3_fan() { return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

Fan ap_fan(long p) {
  std::vector<IVec> rays;
  for (long j = 0; j <= p; ++j) rays.push_back({j, 1});
  return make_fan(2, rays);
}

NovikovSeries T(const Rational& e) { return NovikovSeries::monomial(1, e); }

LaurentNov var(const std::vector<std::string>& vars, const std::string& n) { return LaurentNov::variable(vars, n); }

LaurentNov F(const std::vector<std::string>& vars, const Rational& eps) {
  return LaurentNov::constant(vars, NovikovSeries::one()) + var(vars, "w0") * T(-eps);
}

WeightedPointSet chain(long p) {
  WeightedPointSet w = unweighted({});
  for (long j = 0; j <= p; ++j) {
    w.A.push_back({j});
    w.rho.emplace_back(j * (j - 1) / 2);
    w.c.emplace_back(1);
  }
  return w;
}

}  // namespace

TEST_CASE("mirror equation examples") {
  ToricMirrorInput in{c3_fan(), std::nullopt, {}, {}, {}};
  auto m = mirror_equation(in);
  auto x1 = var(m.base_vars, "x1"), x2 = var(m.base_vars, "x2");
  CHECK(m.g == LaurentNov::constant(m.base_vars, NovikovSeries::one()) + x1 + x2);
  CHECK(m.conic_bundle() == "yz = " + to_string(m.g));

  ToricMirrorInput ap{ap_fan(3), std::nullopt, {}, {Rational(0), Rational(0), Rational(1), Rational(3)}, {}};
  auto ma = mirror_equation(ap);
  LaurentNov expect(ma.base_vars);
  for (long j = 0; j <= 3; ++j) expect.add_term({j}, T(Rational(j * (j - 1) / 2)));
  CHECK(ma.g == expect);

  ToricMirrorInput single{make_fan(1, {{1}}), std::nullopt, {}, {}, {}};
  auto ms = mirror_equation(single);
  CHECK(ms.g == LaurentNov::constant({}, NovikovSeries::one()));
  CHECK(ms.conic_bundle() == "yz = 1");

  CHECK_THROWS_AS(mirror_equation({make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}), std::nullopt, {}, {}, {}}),
                  std::invalid_argument);
  ToricMirrorInput bad = in;
  bad.corrections = {{{5, 5}, "gamma", 1, Rational(1)}};
  CHECK_THROWS_AS(mirror_equation(bad), std::invalid_argument);
}

TEST_CASE("mirror equation with corrections and from a nef polytope") {
  ToricMirrorInput in{ap_fan(1), std::nullopt, {}, {}, {{{1}, "C", 2, Rational(3, 2)}}};
  auto m = mirror_equation(in);
  LaurentNov expect(m.base_vars);
  expect.add_term({0}, NovikovSeries::one());
  expect.add_term({1}, NovikovSeries::one() + T(Rational(3, 2)) * GaussianRational(2));
  CHECK(m.g == expect);

  NefPolytope P{{{{1}, Rational(0)}, {{-1}, Rational(2)}}};
  ToricMirrorInput nef{ap_fan(2), P, {{-5, 5}}, {}, {}};
  auto mn = mirror_equation(nef);
  CHECK(mn.A == std::vector<IVec>{{0}, {1}, {2}});
  for (const auto& [e, c] : mn.g.terms()) CHECK(c == NovikovSeries::one());
}

TEST_CASE("superpotentials and gluing") {
  auto m = mirror_equation({c3_fan(), std::nullopt, {}, {}, {}});
  auto U1 = superpotential_U1(m);
  auto U2 = superpotential_U2(m);
  CHECK(U1 * var(m.vars, "z") == m.g.with_vars(m.vars));
  CHECK(U2 == var(m.vars, "y"));
  CHECK(U2.degree_range(U2.require_index("y")) == std::pair<long, long>{1, 1});
  CHECK(to_string(U1).find("z^(-1)") != std::string::npos);

  auto ok = gluing_check(m.g, U1, U2);
  CHECK(ok.ok);
  CHECK(ok.warning.empty());

  LaurentNov corrupted = m.g;
  corrupted -= var(m.base_vars, "x2");
  CHECK_FALSE(gluing_check(corrupted, U1, U2).ok);

  auto vac = gluing_check(LaurentNov(m.base_vars), U1, U2);
  CHECK(vac.ok);
  CHECK_FALSE(vac.warning.empty());

  ToricMirrorInput one{ap_fan(1), std::nullopt, {}, {Rational(2), Rational(0)}, {}};
  auto m1 = mirror_equation(one);
  auto W1 = superpotential_U1(m1);
  CHECK(W1.coeff({0, 0, -1}) == T(2));
}

TEST_CASE("wall crossing examples") {
  auto vars = chart_vars(1);
  Rational eps(1, 10);
  WallCrossing wc{{0}, {1}, eps};
  CHECK(wall_crossing_apply(wc, var(vars, "v")) == F(vars, eps) * var(vars, "v"));
  CHECK(wall_crossing_apply(wc, var(vars, "w0")) == var(vars, "w0"));
  CHECK(wall_crossing_apply(WallCrossing{{0}, {0}, eps}, var(vars, "v")) == var(vars, "v"));

  // negative pairing by exact division
  LaurentNov m = F(vars, eps) * var(vars, "v").pow(-1);
  CHECK(wall_crossing_apply(wc, m) == var(vars, "v").pow(-1));

  // round trip through the inverted series agrees up to the truncation order
  LaurentNov mv = var(vars, "v").pow(-1);
  auto there = wall_crossing_apply(wc, mv);
  auto back = wall_crossing_apply(WallCrossing{{1}, {0}, eps}, there);
  CHECK((back - mv).valuation() >= Valuation(Rational(kDefaultTruncation) - eps));

  auto vars2 = chart_vars(2);
  WallCrossing w2{{0, 0}, {1, 0}, eps};
  CHECK(wall_crossing_apply(w2, var(vars2, "v2")) == var(vars2, "v2"));
  CHECK(wall_crossing_apply(w2, var(vars2, "v1") * var(vars2, "v2")) == F(vars2, eps) * var(vars2, "v1") * var(vars2, "v2"));

  CHECK_THROWS_AS(wall_crossing_apply(WallCrossing{{0}, {-1}, Rational(0)}, var(vars, "v")), std::domain_error);
  CHECK_THROWS_AS(wall_crossing_apply(wc, var(vars2, "v1")), std::invalid_argument);
}

TEST_CASE("wall crossing agrees with numeric substitution") {
  // Oracle: evaluate m at (w0, v_from) with v_from,i = F^{(to-from)_i} v_to,i and compare with the
  // rewritten expression evaluated at (w0, v_to).
  std::mt19937_64 rng(7);
  const double t = 0.37;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + trial % 2;
    auto vars = chart_vars(d);
    Rational eps = testgen::rand_rational(rng, 1, 4, 5);
    IVec from(d), to(d);
    for (std::size_t i = 0; i < d; ++i) {
      from[i] = std::uniform_int_distribution<long>(-2, 2)(rng);
      to[i] = from[i] + std::uniform_int_distribution<long>(0, 2)(rng);
    }
    LaurentNov m(vars);
    for (int k = 0; k < 4; ++k) {
      LaurentNov::Exponent e(d + 1);
      e[0] = std::uniform_int_distribution<long>(0, 2)(rng);
      for (std::size_t i = 1; i <= d; ++i) e[i] = std::uniform_int_distribution<long>(0, 2)(rng);
      m.add_term(e, testgen::rand_series(rng, 0, 3, 2, true));
    }
    auto out = wall_crossing_apply({from, to, eps}, m);
    std::vector<std::complex<double>> pt_to;
    pt_to.emplace_back(0.6, -0.3);
    for (std::size_t i = 0; i < d; ++i) pt_to.emplace_back(0.8 + 0.1 * i, 0.5);
    std::complex<double> f = 1.0 + std::pow(t, -to_double(eps)) * pt_to[0];
    std::vector<std::complex<double>> pt_from = pt_to;
    for (std::size_t i = 0; i < d; ++i) pt_from[i + 1] = std::pow(f, static_cast<double>(to[i] - from[i])) * pt_to[i + 1];
    auto lhs = m.evaluate(pt_from, t);
    auto rhs = out.evaluate(pt_to, t);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(lhs)));
    // w0-degree of each v-monomial group is unchanged when the pairing vanishes
    if (from == to) CHECK(out == m);
  }
}

TEST_CASE("monodromy") {
  Rational eps(1, 10);
  IVec a{0, 0}, b{1, 0}, c{0, 1};
  CHECK(monodromy_check({{a, b, eps}, {b, a, eps}}));
  CHECK(monodromy_check({{a, b, eps}, {b, c, eps}, {c, a, eps}}));
  CHECK_FALSE(monodromy_check({{a, b, eps}, {b, c, Rational(1, 7)}, {c, a, eps}}));
  CHECK_FALSE(monodromy_check({{a, b, eps}, {b, a, Rational(1, 5)}}));
  CHECK_THROWS_AS(monodromy_check({{a, b, eps}, {c, a, eps}}), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t len = 2 + trial % 5;
    std::vector<IVec> pts;
    for (std::size_t k = 0; k < len; ++k)
      pts.push_back({std::uniform_int_distribution<long>(-3, 3)(rng), std::uniform_int_distribution<long>(-3, 3)(rng)});
    std::vector<WallCrossing> loop;
    for (std::size_t k = 0; k < len; ++k) loop.push_back({pts[k], pts[(k + 1) % len], eps});
    CHECK(monodromy_check(loop));
    // perturbing one leg breaks it unless that leg is trivial
    std::size_t j = trial % len;
    loop[j].eps = Rational(1, 3);
    CHECK(monodromy_check(loop) == (pts[j] == pts[(j + 1) % len]));
  }
}

TEST_CASE("global superpotential") {
  auto vars = chart_vars(1);
  Rational eps(1, 10);
  std::vector<BoundaryFacet> V{{{1}, Rational(0)}};
  std::vector<IVec> A{{0}, {1}};
  auto W0 = global_superpotential(V, A, {0}, eps);
  auto W1 = global_superpotential(V, A, {1}, eps);
  CHECK(W0 == var(vars, "w0") + var(vars, "v"));
  CHECK(W1 == var(vars, "w0") + F(vars, eps) * var(vars, "v"));
  CHECK(wall_crossing_apply({{0}, {1}, eps}, W0) == W1);
  CHECK(wall_crossing_apply({{1}, {0}, eps}, W1) == W0);
  for (const auto& alpha : A) CHECK(global_superpotential({}, A, alpha, eps) == var(vars, "w0"));

  CHECK_THROWS_AS(alpha_min({{0, 1}, Rational(0)}, {{0, 0}, {1, 0}}), std::invalid_argument);
  CHECK(alpha_min({{-1}, Rational(4)}, A) == IVec{1});
}

TEST_CASE("atlas invariants on chains and planar sets") {
  Rational eps(1, 10);
  for (long p = 1; p <= 5; ++p) {
    for (const auto& facets : {std::vector<BoundaryFacet>{{{1}, Rational(0)}},
                               std::vector<BoundaryFacet>{{{1}, Rational(0)}, {{-1}, Rational(p)}}}) {
      auto atlas = build_atlas(chain(p), facets, eps);
      CHECK(atlas.charts.size() == static_cast<std::size_t>(p + 1));
      CHECK(atlas.walls.size() == static_cast<std::size_t>(2 * p));
      auto chk = check_atlas(atlas);
      CHECK(chk.monodromy);
      CHECK(chk.chart_independent);
    }
  }

  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    WeightedPointSet w = unweighted({{0, 0}, {1, 0}, {0, 1}});
    for (int k = 0; k < 3; ++k) {
      IVec a{std::uniform_int_distribution<long>(0, 3)(rng), std::uniform_int_distribution<long>(0, 3)(rng)};
      if (std::find(w.A.begin(), w.A.end(), a) == w.A.end()) w.A.push_back(a);
    }
    w.rho.clear();
    w.c.assign(w.A.size(), Rational(1));
    for (std::size_t i = 0; i < w.A.size(); ++i) w.rho.push_back(testgen::rand_rational(rng, 0, 12, 3));
    // facets with generic directions so alpha_min is unique
    std::vector<BoundaryFacet> facets{{{1, 3}, Rational(0)}, {{-2, 1}, Rational(1)}};
    bool unique = true;
    for (const auto& f : facets) {
      try {
        alpha_min(f, w.A);
      } catch (const std::invalid_argument&) {
        unique = false;
      }
    }
    if (!unique) continue;
    auto atlas = build_atlas(w, facets, eps);
    auto chk = check_atlas(atlas);
    CHECK(chk.monodromy);
    CHECK(chk.chart_independent);
    for (const auto& loop : atlas.loops) CHECK(monodromy_check(loop));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("support transform") {
  auto m = mirror_equation({c3_fan(), std::nullopt, {}, {}, {}});
  SupportInput in;
  in.areas = {Rational(0), Rational(0)};
  auto r = support_transform(in, &m, nullptr);
  CHECK(r.fiber_of == "p0");
  REQUIRE(r.fiber_param.size() == 2);
  CHECK(r.fiber_param[0] == NovikovSeries::one());
  CHECK(r.fiber_param[1] == NovikovSeries::one());
  CHECK(r.glued);
  CHECK_FALSE(r.singular_fiber);
  CHECK(r.charts.size() == 2);

  SupportInput bad = in;
  bad.chart_holonomies = {{1, 1}, {1, GaussianRational(0, 1)}};
  CHECK_THROWS_AS(support_transform(bad, &m, nullptr), std::invalid_argument);
  bad.chart_holonomies = {{1, Rational(2)}};
  CHECK_THROWS_AS(support_transform(bad, &m, nullptr), std::invalid_argument);

  // g = 1 + x vanishes at x = -1
  auto ma = mirror_equation({ap_fan(1), std::nullopt, {}, {}, {}});
  SupportInput sing;
  sing.areas = {Rational(0)};
  sing.chart_holonomies = {{-1}};
  CHECK(support_transform(sing, &ma, nullptr).singular_fiber);

  Rational eps(1, 10);
  auto atlas = build_atlas(chain(4), {{{1}, Rational(0)}}, eps);
  SupportInput blow;
  blow.side = SupportSide::Blowup;
  blow.areas = {Rational(3)};
  blow.lambda_ref = Rational(1, 2);
  blow.chart_holonomies = {{GaussianRational(0, 1)}};
  auto rb = support_transform(blow, nullptr, &atlas);
  CHECK(rb.fiber_of == "w0");
  CHECK(rb.glued);
  CHECK_FALSE(rb.singular_fiber);
  REQUIRE(rb.charts.size() == atlas.charts.size());
  for (const auto& c : rb.charts) CHECK(c.equations.front() == rb.charts.front().equations.front());
  CHECK(rb.fiber_param[0] == NovikovSeries::monomial(GaussianRational(0, 1), Rational(5, 2)));

  blow.areas = {Rational(1, 2) + eps};
  blow.chart_holonomies = {{-1}};
  CHECK(support_transform(blow, nullptr, &atlas).singular_fiber);
}
