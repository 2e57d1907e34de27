#include "syzkit/toric.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "syzkit/linalg.hpp"

namespace syzkit {

long dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

ZVector to_z(const IVec& v) {
  ZVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::string show(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

Fan make_fan(int dim, std::vector<IVec> rays, std::vector<std::vector<int>> cones) {
  if (dim < 1) throw std::invalid_argument("fan dimension must be positive");
  std::set<IVec> seen;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("ray " + show(r) + " has wrong dimension");
    if (!is_primitive(to_z(r))) throw std::invalid_argument("ray " + show(r) + " is not primitive");
    if (!seen.insert(r).second) throw std::invalid_argument("duplicate ray " + show(r));
  }
  for (const auto& c : cones) {
    for (int i : c)
      if (i < 0 || i >= static_cast<int>(rays.size())) throw std::invalid_argument("cone references unknown ray");
    QMatrix m;
    for (int i : c) {
      QVector row;
      for (long x : rays[i]) row.emplace_back(x);
      m.push_back(row);
    }
    if (rank(m) != c.size()) throw std::invalid_argument("cone is not simplicial");
  }
  return Fan{dim, std::move(rays), std::move(cones)};
}

std::optional<CYStructure> check_calabi_yau(const Fan& fan) {
  if (fan.rays.empty()) throw std::invalid_argument("check_calabi_yau: empty ray list");
  ZMatrix m;
  ZVector ones;
  for (const auto& r : fan.rays) {
    m.push_back(to_z(r));
    ones.emplace_back(1);
  }
  auto sol = solve_integer(m, ones);
  if (!sol) return std::nullopt;
  CYStructure cy;
  for (const auto& x : *sol) cy.nu.push_back(x.get_si());
  return cy;
}

std::vector<IVec> exponents_from_rays(const Fan& fan, const CYStructure& cy) {
  for (const auto& r : fan.rays)
    if (dot(cy.nu, r) != 1) throw std::invalid_argument("exponents_from_rays: nu does not pair to 1 with " + show(r));
  const IVec& v0 = fan.rays.front();
  std::vector<QVector> diffs;
  for (const auto& r : fan.rays) {
    QVector d;
    for (std::size_t i = 0; i < r.size(); ++i) d.emplace_back(r[i] - v0[i]);
    diffs.push_back(d);
  }
  // Greedy basis from the differences themselves.
  QMatrix basis;
  for (const auto& d : diffs) {
    QMatrix trial = basis;
    trial.push_back(d);
    if (rank(trial) > basis.size()) basis = trial;
  }
  auto coords_in = [&](const QMatrix& b) -> std::optional<std::vector<IVec>> {
    // Solve b^T c = d for each difference.
    QMatrix bt(fan.dim, QVector(b.size()));
    for (std::size_t j = 0; j < b.size(); ++j)
      for (int i = 0; i < fan.dim; ++i) bt[i][j] = b[j][i];
    std::vector<IVec> out;
    for (const auto& d : diffs) {
      auto c = solve(bt, d);
      if (!c) return std::nullopt;
      IVec ci;
      for (const auto& x : *c) {
        if (!is_integer(x)) return std::nullopt;
        ci.push_back(x.get_num().get_si());
      }
      out.push_back(ci);
    }
    return out;
  };
  if (auto a = coords_in(basis)) return *a;
  // Fallback: Z-basis of the lattice spanned by the differences.
  ZMatrix dz;
  for (const auto& d : diffs) {
    ZVector row;
    for (const auto& x : d) row.push_back(x.get_num());
    dz.push_back(row);
  }
  // Columns of the transposed difference matrix; Hermite form gives a lattice basis.
  ZMatrix cols(fan.dim, ZVector(diffs.size()));
  for (std::size_t j = 0; j < diffs.size(); ++j)
    for (int i = 0; i < fan.dim; ++i) cols[i][j] = dz[j][i];
  auto ch = column_hermite(cols);
  QMatrix lattice_basis;
  for (std::size_t j = 0; j < ch.pivot_rows.size(); ++j) {
    QVector b;
    for (int i = 0; i < fan.dim; ++i) b.emplace_back(ch.H[i][j]);
    lattice_basis.push_back(b);
  }
  auto a = coords_in(lattice_basis);
  if (!a) throw std::logic_error("exponents_from_rays: lattice basis failed");
  return *a;
}

bool NefPolytope::contains(const IVec& v) const {
  for (const auto& f : facets)
    if (sgn(Rational(dot(f.sigma, v)) + f.offset) < 0) return false;
  return true;
}

bool NefPolytope::contains(const std::vector<Rational>& v) const {
  for (const auto& f : facets) {
    Rational s = f.offset;
    for (std::size_t i = 0; i < v.size(); ++i) s += f.sigma[i] * v[i];
    if (sgn(s) < 0) return false;
  }
  return true;
}

LatticeEnumeration lattice_points(const NefPolytope& P, const Box& box) {
  LatticeEnumeration out;
  std::size_t d = box.size();
  if (static_cast<int>(d) != P.dim()) throw std::invalid_argument("lattice_points: box dimension mismatch");
  for (const auto& [lo, hi] : box)
    if (lo > hi) return out;
  IVec v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = box[i].first;
  while (true) {
    if (P.contains(v)) {
      out.points.push_back(v);
      for (std::size_t i = 0; i < d && !out.truncated; ++i) {
        for (int side : {-1, 1}) {
          bool on_edge = side < 0 ? v[i] == box[i].first : v[i] == box[i].second;
          if (!on_edge) continue;
          IVec w = v;
          w[i] += side;
          if (P.contains(w)) out.truncated = true;
        }
      }
    }
    std::size_t k = 0;
    while (k < d && v[k] == box[k].second) {
      v[k] = box[k].first;
      ++k;
    }
    if (k == d) break;
    ++v[k];
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

namespace {

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool tight(const Facet& f, const std::vector<Rational>& v) {
  Rational s = f.offset;
  for (std::size_t i = 0; i < v.size(); ++i) s += f.sigma[i] * v[i];
  return sgn(s) == 0;
}

}  // namespace

std::vector<std::vector<Rational>> polytope_vertices(const NefPolytope& P) {
  std::size_t d = static_cast<std::size_t>(P.dim());
  std::set<std::vector<Rational>> found;
  for_each_subset(P.facets.size(), d, [&](const std::vector<std::size_t>& idx) {
    QMatrix m;
    QVector b;
    for (auto i : idx) {
      QVector row;
      for (long x : P.facets[i].sigma) row.emplace_back(x);
      m.push_back(row);
      b.push_back(-P.facets[i].offset);
    }
    if (determinant(m) == 0) return;
    auto x = solve(m, b);
    if (x && P.contains(*x)) found.insert(*x);
  });
  return {found.begin(), found.end()};
}

bool face_transversality_check(const std::vector<IVec>& A, const NefPolytope& P) {
  for (const auto& a : A)
    if (!P.contains(a)) throw std::invalid_argument("face_transversality_check: point outside P");
  auto verts = polytope_vertices(P);
  if (verts.empty()) return A.empty();
  std::vector<std::vector<Rational>> Aq;
  for (const auto& a : A) {
    std::vector<Rational> q;
    for (long x : a) q.emplace_back(x);
    Aq.push_back(q);
  }
  std::size_t m = P.facets.size();
  if (m > 20) throw std::invalid_argument("face_transversality_check: too many facets for exhaustive faces");
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    auto on_face = [&](const std::vector<Rational>& v) {
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i & 1UL) && !tight(P.facets[i], v)) return false;
      return true;
    };
    bool nonempty = std::any_of(verts.begin(), verts.end(), on_face);
    if (!nonempty) continue;
    if (std::none_of(Aq.begin(), Aq.end(), on_face)) return false;
  }
  return true;
}

}  // namespace syzkit
