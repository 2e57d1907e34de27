#include "syzkit/mirror.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace syzkit {

namespace {

std::vector<std::string> base_names(std::size_t m) {
  if (m == 1) return {"x"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= m; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

NovikovSeries tmono(const GaussianRational& c, const Rational& e, const Rational& trunc) {
  return NovikovSeries::monomial(c, e, trunc);
}

long pairing(const IVec& a, const IVec& b, const IVec& m) {
  long s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += (a[i] - b[i]) * m[i];
  return s;
}

}  // namespace

std::string ToricMirror::conic_bundle() const { return "yz = " + to_string(g); }

ToricMirror mirror_equation(const ToricMirrorInput& in) {
  auto cy = check_calabi_yau(in.fan);
  if (!cy) throw std::invalid_argument("mirror_equation: fan is not Calabi-Yau");
  ToricMirror m;
  m.cy = *cy;
  if (in.nef) {
    auto en = lattice_points(*in.nef, in.box);
    if (en.truncated) throw std::invalid_argument("mirror_equation: lattice enumeration truncated by the box");
    m.A = en.points;
  } else {
    m.A = exponents_from_rays(in.fan, *cy);
  }
  if (in.rho.empty()) m.rho.assign(m.A.size(), Rational(0));
  else if (in.rho.size() != m.A.size()) throw std::invalid_argument("mirror_equation: rho must be defined on A");
  else m.rho = in.rho;

  std::size_t d = m.A.empty() ? static_cast<std::size_t>(std::max(in.fan.dim - 1, 0)) : m.A.front().size();
  m.base_vars = d == 0 ? std::vector<std::string>{} : base_names(d);
  m.vars = m.base_vars;
  m.vars.push_back("y");
  m.vars.push_back("z");

  for (const auto& corr : in.corrections)
    if (std::find(m.A.begin(), m.A.end(), corr.alpha) == m.A.end())
      throw std::invalid_argument("mirror_equation: correction references a point outside A");

  m.g = LaurentNov(m.base_vars, in.truncation);
  for (std::size_t a = 0; a < m.A.size(); ++a) {
    NovikovSeries c = NovikovSeries::one(in.truncation);
    for (const auto& corr : in.corrections)
      if (corr.alpha == m.A[a]) c += tmono(GaussianRational(corr.count), corr.area, in.truncation);
    m.g.add_term(m.A[a], c * tmono(1, m.rho[a], in.truncation));
  }
  return m;
}

LaurentNov superpotential_U1(const ToricMirror& m) {
  LaurentNov zinv = LaurentNov::variable(m.vars, "z").pow(-1);
  return m.g.with_vars(m.vars) * zinv;
}

LaurentNov superpotential_U2(const ToricMirror& m) {
  return LaurentNov::variable(m.vars, "y").with_truncation(m.g.truncation());
}

GluingResult gluing_check(const LaurentNov& g, const LaurentNov& W_U1, const LaurentNov& W_U2) {
  GluingResult r;
  if (g.is_zero()) {
    r.ok = true;
    r.warning = "empty exponent set: g = 0, gluing holds vacuously";
    return r;
  }
  const auto& vars = W_U2.vars();
  LaurentNov gz = g.with_vars(vars) * LaurentNov::variable(vars, "z").pow(-1);
  LaurentNov substituted = W_U2.substitute(W_U2.require_index("y"), gz);
  r.ok = substituted == W_U1.with_vars(vars);
  return r;
}

std::vector<std::string> chart_vars(std::size_t dim) {
  std::vector<std::string> out{"w0"};
  if (dim == 1) {
    out.push_back("v");
  } else {
    for (std::size_t i = 1; i <= dim; ++i) out.push_back("v" + std::to_string(i));
  }
  return out;
}

LaurentNov wall_crossing_apply(const WallCrossing& wc, const LaurentNov& m) {
  if (wc.from.size() != wc.to.size()) throw std::invalid_argument("wall_crossing_apply: chamber labels differ in dimension");
  if (m.nvars() != wc.from.size() + 1 || m.vars().front() != "w0")
    throw std::invalid_argument("wall_crossing_apply: expression is not over chart coordinates (w0, v...)");
  const auto& vars = m.vars();
  const Rational& trunc = m.truncation();
  LaurentNov F = LaurentNov::constant(vars, NovikovSeries::one(trunc));
  LaurentNov::Exponent ew(vars.size(), 0);
  ew[0] = 1;
  F.add_term(ew, tmono(1, -wc.eps, trunc));

  std::map<IVec, LaurentNov> groups;
  for (const auto& [e, c] : m.terms()) {
    IVec tail(e.begin() + 1, e.end());
    auto it = groups.try_emplace(tail, LaurentNov(vars, trunc)).first;
    it->second.add_term(e, c);
  }
  LaurentNov out(vars, trunc);
  for (auto& [tail, part] : groups) {
    long k = pairing(wc.to, wc.from, tail);
    if (k >= 0) {
      out += part * F.pow(k);
      continue;
    }
    LaurentNov q = part;
    long left = -k;
    while (left > 0) {
      auto d = exact_divide(q, F, 0);
      if (!d) break;
      q = *d;
      --left;
    }
    if (left > 0) {
      LaurentNov Finv;
      try {
        Finv = invert(F);
      } catch (const std::exception& e) {
        throw std::domain_error(std::string("wall_crossing_apply: cannot invert 1 + T^{-eps} w0: ") + e.what());
      }
      q = q * Finv.pow(left);
    }
    out += q;
  }
  return out;
}

std::map<Rational, IVec, RationalLess> wall_crossing_composite(const std::vector<WallCrossing>& loop) {
  std::map<Rational, IVec, RationalLess> acc;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& leg = loop[i];
    if (leg.from.size() != leg.to.size()) throw std::invalid_argument("monodromy_check: leg dimensions differ");
    auto& v = acc.try_emplace(leg.eps, IVec(leg.from.size(), 0)).first->second;
    if (v.size() != leg.from.size()) throw std::invalid_argument("monodromy_check: leg dimensions differ");
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += leg.to[j] - leg.from[j];
  }
  for (auto it = acc.begin(); it != acc.end();) {
    bool zero = std::all_of(it->second.begin(), it->second.end(), [](long x) { return x == 0; });
    it = zero ? acc.erase(it) : std::next(it);
  }
  return acc;
}

bool monodromy_check(const std::vector<WallCrossing>& loop) {
  if (loop.empty()) return true;
  for (std::size_t i = 0; i < loop.size(); ++i)
    if (loop[i].to != loop[(i + 1) % loop.size()].from)
      throw std::invalid_argument("monodromy_check: legs do not form a closed loop");
  return wall_crossing_composite(loop).empty();
}

IVec alpha_min(const BoundaryFacet& f, const std::vector<IVec>& A) {
  if (A.empty()) throw std::invalid_argument("alpha_min: empty exponent set");
  std::vector<const IVec*> best;
  long bv = 0;
  for (const auto& a : A) {
    if (a.size() != f.sigma.size()) throw std::invalid_argument("alpha_min: dimension mismatch");
    long v = dot(f.sigma, a);
    if (best.empty() || v < bv) {
      best = {&a};
      bv = v;
    } else if (v == bv) {
      best.push_back(&a);
    }
  }
  if (best.size() > 1) throw std::invalid_argument("alpha_min: minimum of <sigma, .> over A is not unique");
  return *best.front();
}

LaurentNov global_superpotential(const std::vector<BoundaryFacet>& facets, const std::vector<IVec>& A,
                                 const IVec& alpha, const Rational& eps, const Rational& truncation) {
  const auto vars = chart_vars(alpha.size());
  LaurentNov F = LaurentNov::constant(vars, NovikovSeries::one(truncation));
  LaurentNov::Exponent ew(vars.size(), 0);
  ew[0] = 1;
  F.add_term(ew, tmono(1, -eps, truncation));
  LaurentNov W = LaurentNov::variable(vars, "w0").with_truncation(truncation);
  for (const auto& f : facets) {
    if (f.sigma.size() != alpha.size()) throw std::invalid_argument("global_superpotential: facet dimension mismatch");
    IVec amin = alpha_min(f, A);
    long k = pairing(alpha, amin, f.sigma);
    LaurentNov::Exponent e(vars.size(), 0);
    for (std::size_t i = 0; i < f.sigma.size(); ++i) e[i + 1] = f.sigma[i];
    W += F.pow(k) * LaurentNov::monomial(vars, e, tmono(1, f.kappa, truncation));
  }
  return W;
}

ChamberAtlas build_atlas(const WeightedPointSet& w, const std::vector<BoundaryFacet>& facets, const Rational& eps,
                         const Rational& truncation) {
  auto sub = induced_subdivision(w);
  ChamberAtlas atlas;
  std::string prov = w.dim() == 1 ? "chamber B^v_alpha of R" : "chamber B^v_alpha of R^2";
  for (int v : sub.vertices) {
    const IVec& a = w.A[v];
    atlas.charts.push_back({a, chart_vars(a.size()), global_superpotential(facets, w.A, a, eps, truncation), prov});
  }
  std::set<std::pair<int, int>> adj;
  std::vector<std::vector<int>> polygons;
  for (const auto& cv : sub.cell_vertices) {
    if (cv.size() < 2) continue;
    if (cv.size() == 2) {
      adj.insert({std::min(cv[0], cv[1]), std::max(cv[0], cv[1])});
      continue;
    }
    for (std::size_t k = 0; k < cv.size(); ++k) {
      int a = cv[k], b = cv[(k + 1) % cv.size()];
      adj.insert({std::min(a, b), std::max(a, b)});
    }
    polygons.push_back(cv);
  }
  auto leg = [&](int a, int b) { return WallCrossing{w.A[a], w.A[b], eps}; };
  for (auto [a, b] : adj) {
    atlas.walls.push_back(leg(a, b));
    atlas.walls.push_back(leg(b, a));
    atlas.loops.push_back({leg(a, b), leg(b, a)});
  }
  for (const auto& cv : polygons) {
    std::vector<WallCrossing> loop;
    for (std::size_t k = 0; k < cv.size(); ++k) loop.push_back(leg(cv[k], cv[(k + 1) % cv.size()]));
    atlas.loops.push_back(loop);
  }
  if (w.dim() == 1 && sub.vertices.size() > 2) {
    std::vector<int> order = sub.vertices;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return w.A[a] < w.A[b]; });
    std::vector<WallCrossing> loop;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) loop.push_back(leg(order[k], order[k + 1]));
    for (std::size_t k = order.size() - 1; k > 0; --k) loop.push_back(leg(order[k], order[k - 1]));
    atlas.loops.push_back(loop);
  }
  return atlas;
}

AtlasCheck check_atlas(const ChamberAtlas& atlas) {
  AtlasCheck r;
  for (std::size_t i = 0; i < atlas.loops.size(); ++i) {
    if (!monodromy_check(atlas.loops[i])) {
      r.monodromy = false;
      r.failures.push_back("loop " + std::to_string(i) + " has nontrivial monodromy");
    }
  }
  auto chart = [&](const IVec& label) -> const ChamberChart& {
    for (const auto& c : atlas.charts)
      if (c.label == label) return c;
    throw std::invalid_argument("check_atlas: wall references an unknown chart");
  };
  for (const auto& wall : atlas.walls) {
    const auto& a = chart(wall.from);
    const auto& b = chart(wall.to);
    if (!(wall_crossing_apply(wall, a.superpotential) == b.superpotential)) {
      r.chart_independent = false;
      r.failures.push_back("superpotential differs across a wall");
    }
  }
  return r;
}

namespace {

std::vector<GaussianRational> consistent_holonomy(const SupportInput& in, std::size_t count) {
  if (in.chart_holonomies.empty()) return std::vector<GaussianRational>(count, GaussianRational(1));
  const auto& first = in.chart_holonomies.front();
  for (const auto& h : in.chart_holonomies) {
    if (h.size() != count) throw std::invalid_argument("support_transform: holonomy list has the wrong length");
    for (const auto& x : h)
      if (x.norm() != 1) throw std::invalid_argument("support_transform: holonomy must have unit norm");
    if (h != first) throw std::invalid_argument("support_transform: inconsistent holonomy data across the clean intersection");
  }
  return first;
}

}  // namespace

SupportReport support_transform(const SupportInput& in, const ToricMirror* toric, const ChamberAtlas* atlas) {
  SupportReport r;
  if (in.side == SupportSide::ToricCY) {
    if (!toric) throw std::invalid_argument("support_transform: toric side needs the mirror data");
    const std::size_t m = toric->base_vars.size();
    if (in.areas.size() != m) throw std::invalid_argument("support_transform: need one area per base coordinate");
    auto hol = consistent_holonomy(in, m);
    const Rational& trunc = toric->g.truncation();
    for (std::size_t j = 0; j < m; ++j) r.fiber_param.push_back(tmono(hol[j], in.areas[j], trunc));
    r.fiber_of = "p0";
    for (const char* name : {"U1", "U2"}) {
      ChartEquations ce{name, {}};
      for (std::size_t j = 0; j < m; ++j)
        ce.equations.push_back(LaurentNov::variable(toric->vars, toric->base_vars[j]).with_truncation(trunc) -
                               LaurentNov::constant(toric->vars, r.fiber_param[j]));
      r.charts.push_back(std::move(ce));
    }
    LaurentNov gz = toric->g.with_vars(toric->vars) * LaurentNov::variable(toric->vars, "z").pow(-1);
    std::size_t y = std::find(toric->vars.begin(), toric->vars.end(), "y") - toric->vars.begin();
    r.glued = true;
    for (std::size_t j = 0; j < m; ++j)
      r.glued = r.glued && r.charts[1].equations[j].substitute(y, gz) == r.charts[0].equations[j];
    r.singular_fiber = toric->g.evaluate(r.fiber_param).is_zero();
    return r;
  }

  if (!atlas || atlas->charts.empty()) throw std::invalid_argument("support_transform: blowup side needs a chamber atlas");
  if (in.areas.size() != 1) throw std::invalid_argument("support_transform: blowup side takes the single area C8");
  auto hol = consistent_holonomy(in, 1);
  const Rational& trunc = atlas->charts.front().superpotential.truncation();
  NovikovSeries s = tmono(hol[0], in.areas[0] - in.lambda_ref, trunc);
  r.fiber_param = {s};
  r.fiber_of = "w0";
  std::map<IVec, LaurentNov> eq;
  for (const auto& c : atlas->charts) {
    LaurentNov e = LaurentNov::variable(c.coordinates, "w0").with_truncation(trunc) - LaurentNov::constant(c.coordinates, s);
    eq.emplace(c.label, e);
    std::string label = "(";
    for (std::size_t i = 0; i < c.label.size(); ++i) label += (i ? "," : "") + std::to_string(c.label[i]);
    r.charts.push_back({label + ")", {e}});
  }
  r.glued = true;
  for (const auto& wall : atlas->walls) {
    auto a = eq.find(wall.from);
    auto b = eq.find(wall.to);
    if (a == eq.end() || b == eq.end()) throw std::invalid_argument("support_transform: wall references an unknown chart");
    r.glued = r.glued && wall_crossing_apply(wall, a->second) == b->second;
  }
  r.singular_fiber = s == tmono(-1, in.eps, trunc);
  return r;
}

}  // namespace syzkit
