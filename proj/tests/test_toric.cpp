#include <random>

#include "doctest.h"
#include "syzkit/linalg.hpp"
#include "syzkit/toric.hpp"

using namespace syzkit;

namespace {

NefPolytope simplex2() {
  return NefPolytope{{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}}};
}

NefPolytope interval(long p) { return NefPolytope{{{{1}, 0}, {{-1}, p}}}; }

Fan a_fan(long p) {
  std::vector<IVec> rays;
  for (long i = 0; i <= p; ++i) rays.push_back({i, 1});
  return make_fan(2, rays);
}

}  // namespace

TEST_CASE("fan validation") {
  CHECK_THROWS_AS(make_fan(2, {{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_fan(2, {{1, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_fan(2, {{1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_fan(2, {{1, 0}, {-1, 0}}, {{0, 1}}), std::invalid_argument);
  CHECK_NOTHROW(make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}}));
}

TEST_CASE("check_calabi_yau") {
  auto c3 = check_calabi_yau(make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(c3);
  CHECK(c3->nu == IVec{1, 1, 1});
  auto a3 = check_calabi_yau(a_fan(3));
  REQUIRE(a3);
  CHECK(a3->nu == IVec{0, 1});
  // P^2: the rays sum to zero, so <nu, sum> = 0 cannot equal 3.
  CHECK_FALSE(check_calabi_yau(make_fan(2, {{1, 0}, {0, 1}, {-1, -1}})));
  // Rays (1,0),(1,2) admit the rational solution (1,0) but (2,1) forces a half-integer.
  CHECK_FALSE(check_calabi_yau(make_fan(2, {{1, 0}, {1, 2}, {-1, 1}})));
}

TEST_CASE("property: calabi_yau solution satisfies every ray equation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coord(-3, 3);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    IVec nu = {coord(rng), coord(rng), 1};
    std::vector<IVec> rays;
    for (int k = 0; k < 4; ++k) {
      long a = coord(rng), b = coord(rng);
      IVec r = {a, b, 1 - nu[0] * a - nu[1] * b};
      if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
    }
    auto cy = check_calabi_yau(make_fan(3, rays));
    REQUIRE(cy);
    ++found;
    for (const auto& r : rays) CHECK(dot(cy->nu, r) == 1);
  }
  CHECK(found == 200);
}

TEST_CASE("exponent set from rays") {
  Fan c3 = make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto A = exponents_from_rays(c3, *check_calabi_yau(c3));
  CHECK(A == std::vector<IVec>{{0, 0}, {1, 0}, {0, 1}});
  auto Ap = exponents_from_rays(a_fan(4), *check_calabi_yau(a_fan(4)));
  CHECK(Ap == std::vector<IVec>{{0}, {1}, {2}, {3}, {4}});
}

TEST_CASE("lattice_points") {
  auto s = lattice_points(simplex2(), {{-2, 3}, {-2, 3}});
  CHECK(s.points == std::vector<IVec>{{0, 0}, {0, 1}, {1, 0}});
  CHECK_FALSE(s.truncated);
  auto seg = lattice_points(interval(5), {{-1, 7}});
  CHECK(seg.points.size() == 6);
  // A_2: the interval from the facet offsets matches the exponent set of the rays.
  auto a2 = lattice_points(interval(3), {{-10, 10}});
  auto from_rays = exponents_from_rays(a_fan(3), *check_calabi_yau(a_fan(3)));
  CHECK(a2.points == from_rays);
  // Unbounded within the box.
  auto half = lattice_points(NefPolytope{{{{1}, 0}}}, {{0, 4}});
  CHECK(half.truncated);
}

TEST_CASE("property: lattice_points agrees with a brute-force box scan") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<long> off(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    NefPolytope P;
    for (int k = 0; k < 4; ++k) {
      IVec s = {coef(rng), coef(rng)};
      if (s[0] == 0 && s[1] == 0) s[0] = 1;
      P.facets.push_back({s, Rational(off(rng), 2)});
    }
    Box box = {{-6, 6}, {-6, 6}};
    auto got = lattice_points(P, box);
    std::vector<IVec> oracle;
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y) {
        bool in = true;
        for (const auto& f : P.facets) {
          // offset = num/den with den > 0: test den*<sigma,v> + num >= 0 in integers
          long num = f.offset.get_num().get_si(), den = f.offset.get_den().get_si();
          if (den * (f.sigma[0] * x + f.sigma[1] * y) + num < 0) in = false;
        }
        if (in) oracle.push_back({x, y});
      }
    std::sort(oracle.begin(), oracle.end());
    CHECK(got.points == oracle);
  }
}

TEST_CASE("face_transversality_check") {
  CHECK(face_transversality_check({{0, 0}, {1, 0}, {0, 1}}, simplex2()));
  CHECK_FALSE(face_transversality_check({{0, 0}, {1, 0}}, simplex2()));
  CHECK(face_transversality_check({{0}, {1}, {2}, {3}}, interval(3)));
  CHECK_FALSE(face_transversality_check({{0}, {1}, {2}}, interval(3)));
  CHECK_THROWS_AS(face_transversality_check({{5}}, interval(3)), std::invalid_argument);
}
