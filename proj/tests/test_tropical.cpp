#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "syzkit/amoeba.hpp"
#include "syzkit/tropical.hpp"

using namespace syzkit;

namespace {

WeightedPointSet weighted(std::vector<IVec> A, std::vector<long> rho) {
  WeightedPointSet w = unweighted(std::move(A));
  for (std::size_t i = 0; i < rho.size(); ++i) w.rho[i] = rho[i];
  return w;
}

WeightedPointSet a_chain(long p) {
  std::vector<IVec> A;
  std::vector<long> rho;
  for (long j = 0; j <= p; ++j) {
    A.push_back({j});
    rho.push_back(j * (j - 1) / 2);
  }
  return weighted(A, rho);
}

std::set<std::vector<int>> cell_set(const RegularSubdivision& s) { return {s.cells.begin(), s.cells.end()}; }

// Oracle for lower hulls in dimension 1: pairs (i, j) whose chord lies weakly below every lifted point.
std::set<std::vector<int>> lower_edges_1d(const WeightedPointSet& w) {
  std::set<std::vector<int>> out;
  for (std::size_t i = 0; i < w.A.size(); ++i)
    for (std::size_t j = 0; j < w.A.size(); ++j) {
      if (w.A[i][0] >= w.A[j][0]) continue;
      Rational slope = (w.rho[j] - w.rho[i]) / (w.A[j][0] - w.A[i][0]);
      bool lower = true;
      std::vector<int> cell;
      for (std::size_t k = 0; k < w.A.size(); ++k) {
        Rational line = w.rho[i] + slope * (w.A[k][0] - w.A[i][0]);
        if (line > w.rho[k]) lower = false;
        if (line == w.rho[k]) cell.push_back(static_cast<int>(k));
      }
      if (lower) out.insert(cell);
    }
  return out;
}

}  // namespace

TEST_CASE("induced_subdivision examples") {
  auto s = induced_subdivision(unweighted({{0}, {1}}));
  CHECK(cell_set(s) == std::set<std::vector<int>>{{0, 1}});
  auto w3 = weighted({{0}, {1}, {2}}, {0, 0, 1});
  auto s3 = induced_subdivision(w3);
  CHECK(cell_set(s3) == std::set<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(cell_set(s3) == lower_edges_1d(w3));
  auto tri = induced_subdivision(unweighted({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(cell_set(tri) == std::set<std::vector<int>>{{0, 1, 2}});
  CHECK_THROWS_AS(induced_subdivision(unweighted({{0, 0}, {1, 1}, {2, 2}})), std::invalid_argument);
}

TEST_CASE("property: 1d subdivision agrees with the chord oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> r(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<long> xs;
    while (xs.size() < 5) xs.insert(r(rng) - 3);
    std::vector<IVec> A;
    std::vector<long> rho;
    for (long x : xs) {
      A.push_back({x});
      rho.push_back(r(rng));
    }
    auto w = weighted(A, rho);
    CHECK(cell_set(induced_subdivision(w)) == lower_edges_1d(w));
  }
}

TEST_CASE("is_maximal_regular") {
  CHECK(is_maximal_regular(induced_subdivision(unweighted({{0, 0}, {1, 0}, {0, 1}}))));
  CHECK_FALSE(is_maximal_regular(induced_subdivision(unweighted({{0, 0}, {2, 0}, {0, 1}}))));
  for (long p = 1; p <= 6; ++p) {
    auto s = induced_subdivision(a_chain(p));
    CHECK(s.cells.size() == static_cast<std::size_t>(p));
    CHECK(is_maximal_regular(s));
  }
  CHECK_FALSE(is_maximal_regular(induced_subdivision(unweighted({{0}, {1}, {2}}))));
}

TEST_CASE("tropical_hypersurface examples") {
  auto t = tropical_hypersurface(unweighted({{0}, {1}}));
  REQUIRE(t.vertices.size() == 1);
  CHECK(t.vertices[0][0] == 0);
  CHECK(t.chambers.size() == 2);

  auto line = tropical_hypersurface(unweighted({{0, 0}, {1, 0}, {0, 1}}));
  // Oracle: the three forms 0, xi1, xi2 agree only at the origin.
  REQUIRE(line.vertices.size() == 1);
  CHECK(line.vertices[0] == QVector{0, 0});
  std::set<QVector> dirs;
  for (const auto& e : line.edges) {
    CHECK_FALSE(e.to);
    dirs.insert(e.direction);
  }
  CHECK(dirs == std::set<QVector>{{-1, 0}, {0, -1}, {1, 1}});
  CHECK(line.chambers.size() == 3);

  for (long p = 1; p <= 6; ++p) {
    auto w = a_chain(p);
    auto tc = tropical_hypersurface(w);
    REQUIRE(tc.vertices.size() == static_cast<std::size_t>(p));
    for (long j = 0; j < p; ++j) CHECK(tc.vertices[j][0] == w.rho[j + 1] - w.rho[j]);
    CHECK(tc.chambers.size() == static_cast<std::size_t>(p + 1));
  }
}

TEST_CASE("property: duality and chamber samples on random planar sets") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coord(0, 3), lift(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<IVec> pts;
    while (pts.size() < 6) pts.insert({coord(rng), coord(rng)});
    std::vector<IVec> A(pts.begin(), pts.end());
    std::vector<long> rho;
    for (std::size_t i = 0; i < A.size(); ++i) rho.push_back(lift(rng));
    auto w = weighted(A, rho);
    TropicalComplex t;
    try {
      t = tropical_hypersurface(w);
    } catch (const std::invalid_argument&) {
      continue;  // collinear draw
    }
    CHECK(t.chambers.size() == t.subdivision.vertices.size());
    for (const auto& ch : t.chambers) {
      auto c = chi(w, ch.sample);
      CHECK(c.argmax == std::vector<int>{ch.label});
    }
    // Bounded edges of the tropical curve are dual to interior edges of the subdivision.
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& cv : t.subdivision.cell_vertices)
      for (std::size_t k = 0; k < cv.size(); ++k) {
        int a = cv[k], b = cv[(k + 1) % cv.size()];
        ++edge_use[{std::min(a, b), std::max(a, b)}];
      }
    std::size_t interior = 0;
    for (const auto& [e, n] : edge_use) interior += n == 2;
    CHECK(t.bounded_edge_count() == interior);
    // Every Pi_0 vertex is a tie of chi between all vertices of its dual cell.
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
      auto c = chi(w, t.vertices[v]);
      std::vector<int> cell = t.subdivision.cells[t.vertex_cell[v]];
      CHECK(c.argmax == cell);
    }
  }
}

TEST_CASE("amoeba_sample examples") {
  WeightedPointSet lin{{{0}, {1}}, {0, 0}, {-1, 1}};
  auto s = amoeba_sample(lin, Rational(1, 10));
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0][0] == doctest::Approx(0).epsilon(1e-12));

  WeightedPointSet sq{{{0}, {2}}, {1, 0}, {-1, 1}};
  for (auto tau : {Rational(1, 4), Rational(1, 100)}) {
    auto r = amoeba_sample(sq, tau);
    REQUIRE(r.points.size() == 2);
    for (const auto& p : r.points) CHECK(p[0] == doctest::Approx(-0.5).epsilon(1e-10));
  }
  CHECK_THROWS_AS(amoeba_sample(lin, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(amoeba_sample(lin, Rational(0)), std::invalid_argument);
}

TEST_CASE("amoeba of a line: residual certificate, containment, serial = parallel") {
  auto w = unweighted({{0, 0}, {1, 0}, {0, 1}});
  auto trop = tropical_hypersurface(w);
  Rational tau(1, 100);
  auto serial = amoeba_sample_serial(w, tau);
  auto par = amoeba_sample_parallel(w, tau);
  CHECK(serial.points == par.points);
  CHECK(serial.failures == 0);
  CHECK(serial.points.size() == 50 * 50);
  // Every sample of |1 + x1 + x2| = 0 lies within log 2 / |log tau| of the tropical line.
  double bound = std::log(2.0) / std::abs(std::log(0.01)) + 1e-9;
  for (const auto& p : serial.points) CHECK(distance_to_complex(p, trop) <= bound);
}

TEST_CASE("nearly_tropical_check") {
  auto w = unweighted({{0, 0}, {1, 0}, {0, 1}});
  auto trop = tropical_hypersurface(w);
  AmoebaSample at_vertices;
  at_vertices.dim = 2;
  for (const auto& v : trop.vertices) at_vertices.points.push_back({to_double(v[0]), to_double(v[1])});
  CHECK(nearly_tropical_check(at_vertices, trop, Rational(0)).max_distance == 0);

  auto r = nearly_tropical_check(amoeba_sample(w, Rational(1, 100)), trop, Rational(1, 5));
  CHECK(r.ok);
  CHECK(r.max_distance <= 0.2);

  double prev = 1e9;
  for (auto tau : {Rational(1, 4), Rational(1, 16), Rational(1, 64)}) {
    double d = nearly_tropical_check(amoeba_sample(w, tau), trop, Rational(1)).max_distance;
    CHECK(d < prev);
    prev = d;
  }

  // x^p - 1 has its amoeba at 0; the tropical point of the perturbed lift rho(p) = p sits at 1.
  for (long p : {2L, 3L, 5L}) {
    WeightedPointSet g{{{0}, {p}}, {0, 0}, {-1, 1}};
    auto sample = amoeba_sample(g, Rational(1, 10));
    CHECK(sample.points.size() == static_cast<std::size_t>(p));
    WeightedPointSet perturbed{{{0}, {p}}, {0, p}, {-1, 1}};
    auto report = nearly_tropical_check(sample, tropical_hypersurface(perturbed), Rational(1, 2));
    CHECK_FALSE(report.ok);
    CHECK(report.max_distance == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(nearly_tropical_check(AmoebaSample{2, {}, 0.5, {}, 0, 0}, trop, Rational(1)), std::invalid_argument);
}
