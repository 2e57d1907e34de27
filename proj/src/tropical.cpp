#include "syzkit/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace syzkit {

void WeightedPointSet::validate() const {
  if (rho.size() != A.size() || c.size() != A.size())
    throw std::invalid_argument("weighted point set: rho and c must be defined on exactly A");
  std::set<IVec> seen;
  for (const auto& a : A) {
    if (static_cast<int>(a.size()) != dim()) throw std::invalid_argument("weighted point set: mixed dimensions");
    if (!seen.insert(a).second) throw std::invalid_argument("weighted point set: duplicate point");
  }
  for (const auto& x : c)
    if (sgn(x) == 0) throw std::invalid_argument("weighted point set: zero coefficient");
}

WeightedPointSet unweighted(std::vector<IVec> A) {
  std::size_t n = A.size();
  return WeightedPointSet{std::move(A), std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(1))};
}

Rational AffineFunction::operator()(const IVec& x) const {
  Rational s = constant;
  for (std::size_t i = 0; i < x.size(); ++i) s += grad[i] * x[i];
  return s;
}

std::size_t TropicalComplex::bounded_edge_count() const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const TropicalEdge& e) { return e.to.has_value(); }));
}

namespace {

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

long cross(const IVec& o, const IVec& a, const IVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Extreme points of a planar point set in counter-clockwise order.
std::vector<int> hull2(const std::vector<IVec>& pts, std::vector<int> idx) {
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  std::size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    int i = idx[t];
    while (k >= lower && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

std::size_t affine_rank(const std::vector<IVec>& A) {
  QMatrix m;
  for (std::size_t i = 1; i < A.size(); ++i) {
    QVector row;
    for (std::size_t j = 0; j < A[i].size(); ++j) row.emplace_back(A[i][j] - A[0][j]);
    m.push_back(row);
  }
  return rank(m);
}

}  // namespace

RegularSubdivision induced_subdivision(const WeightedPointSet& w) {
  w.validate();
  if (w.A.empty()) throw std::invalid_argument("induced_subdivision: empty point set");
  const std::size_t d = static_cast<std::size_t>(w.dim());
  if (d < 1 || d > 2) throw std::invalid_argument("induced_subdivision: supported for dimension 1 and 2");
  RegularSubdivision s;
  s.points = w.A;
  if (w.A.size() == 1) {
    s.cells = {{0}};
    s.lifts = {AffineFunction{QVector(d, Rational(0)), w.rho[0]}};
    s.cell_vertices = {{0}};
    s.vertices = {0};
    return s;
  }
  if (affine_rank(w.A) != d) throw std::invalid_argument("induced_subdivision: point set is not full-dimensional");

  std::set<std::vector<int>> seen;
  for_each_subset(w.A.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
    QMatrix m;
    QVector b;
    for (auto i : idx) {
      QVector row;
      for (long x : w.A[i]) row.emplace_back(x);
      row.emplace_back(1);
      m.push_back(row);
      b.push_back(w.rho[i]);
    }
    if (determinant(m) == 0) return;
    auto sol = solve(m, b);
    AffineFunction h{QVector(sol->begin(), sol->begin() + d), (*sol)[d]};
    std::vector<int> cell;
    for (std::size_t a = 0; a < w.A.size(); ++a) {
      int c = cmp(h(w.A[a]), w.rho[a]);
      if (c > 0) return;  // some lifted point lies below this plane
      if (c == 0) cell.push_back(static_cast<int>(a));
    }
    if (seen.insert(cell).second) {
      s.cells.push_back(cell);
      s.lifts.push_back(h);
    }
  });

  std::set<int> verts;
  for (const auto& cell : s.cells) {
    std::vector<int> cv;
    if (d == 1) {
      auto [lo, hi] = std::minmax_element(cell.begin(), cell.end(), [&](int a, int b) { return w.A[a] < w.A[b]; });
      cv = {*lo, *hi};
    } else {
      cv = hull2(w.A, cell);
    }
    verts.insert(cv.begin(), cv.end());
    s.cell_vertices.push_back(cv);
  }
  s.vertices.assign(verts.begin(), verts.end());
  return s;
}

bool is_maximal_regular(const RegularSubdivision& s) {
  if (s.points.empty()) return false;
  std::size_t d = s.points.front().size();
  for (const auto& cell : s.cells) {
    if (cell.size() != d + 1) return false;
    QMatrix m;
    for (std::size_t i = 1; i < cell.size(); ++i) {
      QVector row;
      for (std::size_t j = 0; j < d; ++j) row.emplace_back(s.points[cell[i]][j] - s.points[cell[0]][j]);
      m.push_back(row);
    }
    Rational det = determinant(m);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

ChiValue chi(const WeightedPointSet& w, const QVector& xi) {
  ChiValue out;
  bool first = true;
  for (std::size_t a = 0; a < w.A.size(); ++a) {
    Rational v = -w.rho[a];
    for (std::size_t i = 0; i < xi.size(); ++i) v += w.A[a][i] * xi[i];
    int c = first ? 1 : cmp(v, out.value);
    if (c > 0) {
      out.value = v;
      out.argmax = {static_cast<int>(a)};
      first = false;
    } else if (c == 0) {
      out.argmax.push_back(static_cast<int>(a));
    }
  }
  return out;
}

namespace {

bool unique_max(const WeightedPointSet& w, const QVector& xi, int label) {
  auto c = chi(w, xi);
  return c.argmax.size() == 1 && c.argmax.front() == label;
}

TropicalComplex hypersurface_1d(const WeightedPointSet& w, RegularSubdivision s) {
  TropicalComplex t;
  t.dim = 1;
  if (s.points.size() == 1) {
    t.chambers.push_back({0, {Rational(0)}});
    t.subdivision = std::move(s);
    return t;
  }
  // Cells ordered left to right; the dual vertex of [a, b] is the slope of the lift.
  std::vector<int> order(s.cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return s.points[s.cell_vertices[x][0]] < s.points[s.cell_vertices[y][0]];
  });
  for (int ci : order) {
    t.vertices.push_back({s.lifts[ci].grad[0]});
    t.vertex_cell.push_back(ci);
  }
  std::vector<int> labels = s.vertices;
  std::sort(labels.begin(), labels.end(), [&](int a, int b) { return w.A[a] < w.A[b]; });
  for (std::size_t k = 0; k < labels.size(); ++k) {
    Rational x;
    if (t.vertices.empty()) x = 0;
    else if (k == 0) x = t.vertices.front()[0] - 1;
    else if (k == labels.size() - 1) x = t.vertices.back()[0] + 1;
    else x = (t.vertices[k - 1][0] + t.vertices[k][0]) / 2;
    if (!unique_max(w, {x}, labels[k]))
      throw std::logic_error("tropical_hypersurface: chamber sample is not an interior point");
    t.chambers.push_back({labels[k], {x}});
  }
  t.subdivision = std::move(s);
  return t;
}

TropicalComplex hypersurface_2d(const WeightedPointSet& w, RegularSubdivision s) {
  TropicalComplex t;
  t.dim = 2;
  if (s.points.size() == 1) {
    t.chambers.push_back({0, {Rational(0), Rational(0)}});
    t.subdivision = std::move(s);
    return t;
  }
  for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
    t.vertices.push_back(s.lifts[ci].grad);
    t.vertex_cell.push_back(static_cast<int>(ci));
  }
  std::map<std::pair<int, int>, std::vector<int>> edge_cells;
  for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
    const auto& cv = s.cell_vertices[ci];
    for (std::size_t k = 0; k < cv.size(); ++k) {
      int a = cv[k], b = cv[(k + 1) % cv.size()];
      edge_cells[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(ci));
    }
  }
  std::map<int, QVector> normal_sum;
  for (const auto& [edge, cells] : edge_cells) {
    TropicalEdge e;
    e.labels = edge;
    e.from = cells[0];
    if (cells.size() == 2) {
      e.to = cells[1];
    } else if (cells.size() == 1) {
      const IVec& p = s.points[edge.first];
      const IVec& q = s.points[edge.second];
      long ex = q[0] - p[0], ey = q[1] - p[1];
      long g = std::gcd(std::labs(ex), std::labs(ey));
      long nx = ey / g, ny = -ex / g;
      for (int r : s.cell_vertices[cells[0]]) {
        long side = nx * (s.points[r][0] - p[0]) + ny * (s.points[r][1] - p[1]);
        if (side > 0) {
          nx = -nx;
          ny = -ny;
          break;
        }
        if (side < 0) break;
      }
      e.direction = {Rational(nx), Rational(ny)};
      for (int end : {edge.first, edge.second}) {
        auto& acc = normal_sum.try_emplace(end, QVector{Rational(0), Rational(0)}).first->second;
        acc[0] += nx;
        acc[1] += ny;
      }
    } else {
      throw std::logic_error("tropical_hypersurface: edge shared by more than two cells");
    }
    t.edges.push_back(std::move(e));
  }
  for (int label : s.vertices) {
    QVector centroid{Rational(0), Rational(0)};
    int count = 0;
    for (std::size_t ci = 0; ci < s.cells.size(); ++ci) {
      const auto& cv = s.cell_vertices[ci];
      if (std::find(cv.begin(), cv.end(), label) == cv.end()) continue;
      centroid[0] += t.vertices[ci][0];
      centroid[1] += t.vertices[ci][1];
      ++count;
    }
    centroid[0] /= count;
    centroid[1] /= count;
    QVector sample = centroid;
    auto it = normal_sum.find(label);
    Rational scale = 1;
    for (int attempt = 0; attempt < 40 && !unique_max(w, sample, label); ++attempt) {
      if (it == normal_sum.end()) break;
      sample = {centroid[0] + scale * it->second[0], centroid[1] + scale * it->second[1]};
      scale *= 2;
    }
    if (!unique_max(w, sample, label))
      throw std::logic_error("tropical_hypersurface: no interior sample point for a chamber");
    t.chambers.push_back({label, sample});
  }
  t.subdivision = std::move(s);
  return t;
}

}  // namespace

TropicalComplex tropical_hypersurface(const WeightedPointSet& w) {
  auto s = induced_subdivision(w);
  return w.dim() == 1 ? hypersurface_1d(w, std::move(s)) : hypersurface_2d(w, std::move(s));
}

}  // namespace syzkit
