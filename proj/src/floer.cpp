#include "syzkit/floer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "syzkit/amoeba.hpp"
#include "syzkit/linalg.hpp"
#include "syzkit/parse.hpp"

namespace syzkit {

namespace {

using IExp = std::vector<long>;
using LeadEq = std::map<IExp, GaussianRational>;

GaussianRational gpow(const GaussianRational& z, long n) {
  GaussianRational base = n < 0 ? z.inverse() : z;
  GaussianRational acc(1);
  for (long i = 0; i < std::labs(n); ++i) acc *= base;
  return acc;
}

LeadEq normalize(const LeadEq& eq, std::size_t k) {
  LeadEq out;
  if (eq.empty()) return out;
  IExp lo(k, 0);
  bool first = true;
  for (const auto& [e, c] : eq) {
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j) lo[j] = first ? e[j] : std::min(lo[j], e[j]);
    first = false;
  }
  for (const auto& [e, c] : eq) {
    if (c.is_zero()) continue;
    IExp s(k);
    for (std::size_t j = 0; j < k; ++j) s[j] = e[j] - lo[j];
    out[s] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::vector<std::size_t> involved(const LeadEq& eq, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j) {
    long lo = eq.begin()->first[j], hi = lo;
    for (const auto& [e, c] : eq) {
      lo = std::min(lo, e[j]);
      hi = std::max(hi, e[j]);
    }
    if (lo != hi) out.push_back(j);
  }
  return out;
}

struct LeadingSolve {
  std::vector<std::vector<GaussianRational>> roots;
  std::size_t unresolved = 0;  // numeric roots not recognized in Q(i)
};

GaussianRational eval_univariate(const std::vector<GaussianRational>& c, const GaussianRational& x) {
  GaussianRational acc;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Roots in Q(i) of sum c_k x^k (c_0 != 0), recognized from numerics and verified exactly.
std::vector<GaussianRational> exact_roots(const std::vector<GaussianRational>& c, std::size_t& unresolved) {
  std::vector<std::complex<double>> cc;
  for (const auto& x : c) cc.push_back(x.to_complex());
  std::vector<GaussianRational> out;
  for (const auto& z : polynomial_roots(cc)) {
    std::optional<GaussianRational> hit;
    for (long den : {1000L, 1000000L}) {
      GaussianRational g = gaussian_approx(z, Integer(den));
      if (eval_univariate(c, g).is_zero()) {
        hit = g;
        break;
      }
    }
    if (!hit) {
      ++unresolved;
      continue;
    }
    if (std::find(out.begin(), out.end(), *hit) == out.end()) out.push_back(*hit);
  }
  return out;
}

std::vector<GaussianRational> exact_nth_roots(const GaussianRational& c, long n, std::size_t& unresolved) {
  std::vector<GaussianRational> out;
  std::complex<double> cz = c.to_complex();
  double mod = std::pow(std::abs(cz), 1.0 / static_cast<double>(n));
  for (long k = 0; k < n; ++k) {
    std::complex<double> z = std::polar(mod, (std::arg(cz) + 2 * std::numbers::pi * static_cast<double>(k)) / static_cast<double>(n));
    std::optional<GaussianRational> hit;
    for (long den : {1000L, 1000000L}) {
      GaussianRational g = gaussian_approx(z, Integer(den));
      if (!g.is_zero() && gpow(g, n) == c) {
        hit = g;
        break;
      }
    }
    if (!hit) ++unresolved;
    else if (std::find(out.begin(), out.end(), *hit) == out.end()) out.push_back(*hit);
  }
  return out;
}

LeadEq substitute_root(const LeadEq& eq, std::size_t j, const GaussianRational& r) {
  LeadEq out;
  for (const auto& [e, c] : eq) {
    IExp s;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != j) s.push_back(e[i]);
    out[s] += c * gpow(r, e[j]);
  }
  return out;
}

bool satisfies(const std::vector<LeadEq>& eqs, const std::vector<GaussianRational>& u) {
  for (const auto& eq : eqs) {
    GaussianRational s;
    for (const auto& [e, c] : eq) {
      GaussianRational t = c;
      for (std::size_t j = 0; j < u.size(); ++j) t *= gpow(u[j], e[j]);
      s += t;
    }
    if (!s.is_zero()) return false;
  }
  return true;
}

std::vector<std::vector<GaussianRational>> solve_binomials(const std::vector<LeadEq>& eqs, std::size_t k,
                                                           std::size_t& unresolved) {
  // pick k binomials with independent exponent differences
  ZMatrix E;
  std::vector<GaussianRational> rhs;
  QMatrix Q;
  for (const auto& eq : eqs) {
    if (eq.size() != 2) continue;
    auto a = eq.begin(), b = std::next(eq.begin());
    ZVector d;
    QVector dq;
    for (std::size_t j = 0; j < k; ++j) {
      d.emplace_back(a->first[j] - b->first[j]);
      dq.emplace_back(a->first[j] - b->first[j]);
    }
    QMatrix trial = Q;
    trial.push_back(dq);
    if (rank(trial) == Q.size()) continue;
    Q = trial;
    E.push_back(d);
    rhs.push_back(-(b->second / a->second));  // u^{e_a - e_b} = -c_b / c_a
    if (E.size() == k) break;
  }
  if (E.size() < k) throw std::domain_error("degenerate leading system");
  auto ch = column_hermite(E);
  std::vector<std::vector<GaussianRational>> ws{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<GaussianRational>> next;
    for (const auto& w : ws) {
      GaussianRational c = rhs[i];
      for (std::size_t l = 0; l < i; ++l) c /= gpow(w[l], ch.H[i][l].get_si());
      long n = ch.H[i][i].get_si();
      for (const auto& r : exact_nth_roots(n < 0 ? c.inverse() : c, std::labs(n), unresolved)) {
        auto w2 = w;
        w2.push_back(r);
        next.push_back(std::move(w2));
      }
    }
    ws = std::move(next);
  }
  std::vector<std::vector<GaussianRational>> out;
  for (const auto& w : ws) {
    std::vector<GaussianRational> u(k, GaussianRational(1));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) u[j] *= gpow(w[l], ch.U[j][l].get_si());
    if (satisfies(eqs, u) && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  }
  return out;
}

LeadingSolve solve_leading(std::vector<LeadEq> eqs, std::size_t k) {
  LeadingSolve out;
  std::vector<LeadEq> live;
  for (auto& eq : eqs) {
    auto n = normalize(eq, k);
    if (!n.empty()) live.push_back(std::move(n));
  }
  if (k == 0) {
    if (live.empty()) out.roots.push_back({});
    return out;
  }
  if (live.empty()) throw std::domain_error("degenerate leading system");
  for (const auto& eq : live)
    if (eq.size() == 1) return out;  // a nonzero monomial has no roots in the torus

  for (const auto& eq : live) {
    auto vs = involved(eq, k);
    if (vs.size() != 1) continue;
    std::size_t j = vs.front();
    long hi = 0;
    for (const auto& [e, c] : eq) hi = std::max(hi, e[j]);
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(hi + 1));
    for (const auto& [e, c] : eq) coeffs[static_cast<std::size_t>(e[j])] += c;
    for (const auto& r : exact_roots(coeffs, out.unresolved)) {
      std::vector<LeadEq> rest;
      for (const auto& other : live) rest.push_back(substitute_root(other, j, r));
      auto sub = solve_leading(rest, k - 1);
      out.unresolved += sub.unresolved;
      for (auto& s : sub.roots) {
        s.insert(s.begin() + static_cast<long>(j), r);
        if (std::find(out.roots.begin(), out.roots.end(), s) == out.roots.end()) out.roots.push_back(std::move(s));
      }
    }
    return out;
  }
  if (std::all_of(live.begin(), live.end(), [](const LeadEq& e) { return e.size() == 2; }) || live.size() >= k) {
    std::size_t binomials = static_cast<std::size_t>(std::count_if(live.begin(), live.end(), [](const LeadEq& e) { return e.size() == 2; }));
    if (binomials >= k) {
      out.roots = solve_binomials(live, k, out.unresolved);
      return out;
    }
  }
  QMatrix span;
  for (const auto& eq : live)
    for (const auto& [e, c] : eq) {
      QVector row;
      for (std::size_t j = 0; j < k; ++j) row.emplace_back(e[j] - eq.begin()->first[j]);
      span.push_back(row);
    }
  if (rank(span) < k) throw std::domain_error("degenerate leading system");
  throw std::domain_error("leading system is outside the supported shapes (univariate or binomial elimination)");
}

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn fn) {
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

struct TTerm {
  IExp e;  // exponent over the free variables
  Rational val;
  GaussianRational lead;
};

using TEq = std::vector<TTerm>;

bool tropically_balanced(const TEq& eq, const QVector& nu, std::vector<std::size_t>* argmin = nullptr) {
  std::optional<Rational> best;
  std::vector<std::size_t> at;
  for (std::size_t t = 0; t < eq.size(); ++t) {
    Rational v = eq[t].val;
    for (std::size_t j = 0; j < nu.size(); ++j) v += eq[t].e[j] * nu[j];
    if (!best || v < *best) {
      best = v;
      at = {t};
    } else if (v == *best) {
      at.push_back(t);
    }
  }
  if (argmin) *argmin = at;
  return at.size() >= 2;
}

std::vector<QVector> valuation_candidates(const std::vector<TEq>& eqs, std::size_t k) {
  QMatrix span;
  for (const auto& eq : eqs)
    for (std::size_t a = 1; a < eq.size(); ++a) {
      QVector row;
      for (std::size_t j = 0; j < k; ++j) row.emplace_back(eq[a].e[j] - eq[0].e[j]);
      span.push_back(row);
    }
  if (rank(span) < k) throw std::domain_error("degenerate leading system");

  std::set<QVector> found;
  for_each_combination(eqs.size(), k, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> choice(k, 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& eq = eqs[pick[i]];
      for (std::size_t a = 0; a < eq.size(); ++a)
        for (std::size_t b = a + 1; b < eq.size(); ++b) pairs[i].push_back({a, b});
    }
    while (true) {
      QMatrix m;
      QVector rhs;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& eq = eqs[pick[i]];
        auto [a, b] = pairs[i][choice[i]];
        QVector row;
        for (std::size_t j = 0; j < k; ++j) row.emplace_back(eq[a].e[j] - eq[b].e[j]);
        m.push_back(row);
        rhs.push_back(eq[b].val - eq[a].val);
      }
      if (determinant(m) != 0) {
        QVector nu = *solve(m, rhs);
        if (std::all_of(eqs.begin(), eqs.end(), [&](const TEq& eq) { return tropically_balanced(eq, nu); }))
          found.insert(nu);
      }
      std::size_t i = 0;
      while (i < k && ++choice[i] == pairs[i].size()) choice[i++] = 0;
      if (i == k) break;
    }
  });
  return {found.begin(), found.end()};
}

std::optional<std::vector<NovikovSeries>> novikov_solve(std::vector<std::vector<NovikovSeries>> M,
                                                        std::vector<NovikovSeries> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t r = c; r < n; ++r)
      if (!M[r][c].is_zero() && (!piv || M[r][c].valuation() < M[*piv][c].valuation())) piv = r;
    if (!piv) return std::nullopt;
    std::swap(M[c], M[*piv]);
    std::swap(b[c], b[*piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (M[r][c].is_zero()) continue;
      NovikovSeries f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<NovikovSeries> x(n);
  for (std::size_t r = n; r-- > 0;) {
    NovikovSeries s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= M[r][k] * x[k];
    x[r] = s / M[r][r];
  }
  return x;
}

NovikovSeries determinant_of(const std::vector<std::vector<NovikovSeries>>& H, const Rational& trunc) {
  const std::size_t n = H.size();
  if (n == 0) return NovikovSeries::one(trunc);
  if (n == 1) return H[0][0];
  NovikovSeries det = NovikovSeries::zero(trunc);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<NovikovSeries>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<NovikovSeries> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(H[r][k]);
      minor.push_back(row);
    }
    NovikovSeries term = H[0][c] * determinant_of(minor, trunc);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

Valuation min_valuation(const std::vector<NovikovSeries>& v) {
  Valuation out = Valuation::infinity();
  for (const auto& s : v) out = std::min(out, s.valuation());
  return out;
}

}  // namespace

CriticalPointResult critical_points(const LaurentNov& W) {
  const std::size_t m = W.nvars();
  if (m == 0 || m > 3) throw std::invalid_argument("critical_points: supported for 1 to 3 variables");
  if (W.is_zero()) throw std::domain_error("degenerate leading system");
  const Rational N = W.truncation();

  Rational guard = 4;
  for (const auto& [e, c] : W.terms()) guard = std::max(guard, Rational(4 + 2 * abs(c.valuation().value())));

  std::vector<LaurentNov> grad;
  for (std::size_t i = 0; i < m; ++i) grad.push_back(W.derivative(i));

  std::vector<bool> may_vanish(m, true);
  for (const auto& [e, c] : W.terms())
    for (std::size_t j = 0; j < m; ++j)
      if (e[j] < 0) may_vanish[j] = false;

  CriticalPointResult result;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> zero, free;
    bool allowed = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        zero.push_back(j);
        if (!may_vanish[j]) allowed = false;
      } else {
        free.push_back(j);
      }
    }
    if (!allowed) continue;
    const std::size_t k = free.size();

    std::vector<TEq> eqs;
    bool hopeless = false;
    for (const auto& g : grad) {
      TEq eq;
      for (const auto& [e, c] : g.terms()) {
        bool survives = std::all_of(zero.begin(), zero.end(), [&](std::size_t j) { return e[j] == 0; });
        if (!survives) continue;
        IExp fe;
        for (auto j : free) fe.push_back(e[j]);
        eq.push_back({fe, c.valuation().value(), c.leading_coeff()});
      }
      if (eq.size() == 1) hopeless = true;
      if (!eq.empty()) eqs.push_back(std::move(eq));
    }
    if (hopeless) continue;

    std::vector<QVector> candidates;
    if (k == 0) {
      if (!eqs.empty()) continue;
      candidates.push_back({});
    } else {
      if (eqs.empty()) throw std::domain_error("degenerate leading system");
      candidates = valuation_candidates(eqs, k);
    }

    for (const auto& nu : candidates) {
      std::vector<LeadEq> lead;
      for (const auto& eq : eqs) {
        std::vector<std::size_t> at;
        tropically_balanced(eq, nu, &at);
        LeadEq le;
        for (auto t : at) le[eq[t].e] += eq[t].lead;
        lead.push_back(le);
      }
      std::vector<Valuation> vals(m, Valuation::infinity());
      for (std::size_t i = 0; i < k; ++i) vals[free[i]] = Valuation(nu[i]);
      auto sol = solve_leading(lead, k);
      if (sol.unresolved)
        result.obstructions.push_back({vals, std::to_string(sol.unresolved) + " leading root(s) outside Q(i)"});

      for (const auto& u : sol.roots) {
        Rational Nw = N + guard;
        for (const auto& x : nu) Nw += 2 * abs(x);
        LaurentNov Ww = W.with_truncation(Nw);
        std::vector<LaurentNov> gw, hw;
        for (std::size_t i = 0; i < m; ++i) gw.push_back(Ww.derivative(i));
        std::vector<std::vector<LaurentNov>> Hw(m);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) Hw[i].push_back(gw[i].derivative(j));

        std::vector<NovikovSeries> z(m, NovikovSeries::zero(Nw));
        for (std::size_t i = 0; i < k; ++i) z[free[i]] = NovikovSeries::monomial(u[i], nu[i], Nw);

        bool ok = false;
        std::string reason = "Newton lifting did not converge";
        for (int it = 0; it < 64; ++it) {
          std::vector<NovikovSeries> g;
          for (const auto& gi : gw) g.push_back(gi.evaluate(z));
          if (min_valuation(g).is_infinite()) {
            ok = true;
            break;
          }
          std::vector<std::vector<NovikovSeries>> J(m, std::vector<NovikovSeries>(m));
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) J[i][j] = Hw[i][j].evaluate(z);
          auto delta = novikov_solve(J, g);
          if (!delta) {
            reason = "singular Hessian during lifting";
            break;
          }
          if (min_valuation(*delta).is_infinite()) break;
          for (std::size_t i = 0; i < m; ++i) z[i] -= (*delta)[i];
        }

        CriticalPoint cp;
        for (auto& c : z) cp.coords.push_back(c.with_truncation(N));
        std::vector<NovikovSeries> res;
        for (const auto& gi : grad) res.push_back(gi.evaluate(cp.coords));
        cp.residual = min_valuation(res);
        if (!ok && cp.residual < Valuation(N - 1)) {
          result.obstructions.push_back({vals, reason});
          continue;
        }
        for (const auto& c : cp.coords) cp.leading_valuation.push_back(c.valuation());
        cp.critical_value = W.with_truncation(Nw).evaluate(z).with_truncation(N);
        cp.nondegenerate = hessian_report(W, cp.coords).nondegenerate;
        bool dup = std::any_of(result.points.begin(), result.points.end(),
                               [&](const CriticalPoint& p) { return p.coords == cp.coords; });
        if (!dup) result.points.push_back(std::move(cp));
      }
    }
  }
  return result;
}

HessianReport hessian_report(const LaurentNov& W, const std::vector<NovikovSeries>& pt) {
  const std::size_t m = W.nvars();
  if (pt.size() != m) throw std::invalid_argument("hessian_report: point dimension mismatch");
  HessianReport r;
  r.hessian.assign(m, std::vector<NovikovSeries>(m));
  for (std::size_t i = 0; i < m; ++i) {
    LaurentNov di = W.derivative(i);
    for (std::size_t j = 0; j < m; ++j) r.hessian[i][j] = di.derivative(j).evaluate(pt);
  }
  r.determinant = determinant_of(r.hessian, W.truncation());
  r.nondegenerate = !r.determinant.is_zero();
  if (r.nondegenerate) {
    long half = 1L << (m - 1);
    r.clifford_dims = {half, half};
  }
  return r;
}

std::optional<NodeFactorization> node_factorization(const LaurentNov& W, const std::vector<NovikovSeries>& pt) {
  if (W.nvars() != 2 || pt.size() != 2) return std::nullopt;
  auto h = hessian_report(W, pt);
  if (!h.nondegenerate) return std::nullopt;
  const auto& vars = W.vars();
  NodeFactorization out;
  bool bilinear = std::all_of(W.terms().begin(), W.terms().end(), [](const auto& kv) {
    return kv.first[0] >= 0 && kv.first[0] <= 1 && kv.first[1] >= 0 && kv.first[1] <= 1;
  });
  NovikovSeries c = W.coeff({1, 1});
  if (bilinear && !c.is_zero()) {
    out.c = c;
    out.u = LaurentNov::variable(vars, vars[0]).with_truncation(W.truncation()) - LaurentNov::constant(vars, pt[0]);
    out.v = LaurentNov::variable(vars, vars[1]).with_truncation(W.truncation()) - LaurentNov::constant(vars, pt[1]);
    LaurentNov lhs = W - LaurentNov::constant(vars, W.evaluate(pt));
    out.reexpands = (out.u * out.v) * c == lhs;
    out.factored = out.reexpands;
    if (out.factored) return out;
  }
  const auto& H = h.hessian;
  GaussianRational half(Rational(1, 2));
  if (!H[0][0].is_zero()) {
    out.normal_form = {H[0][0] * half, (H[1][1] - H[0][1] * H[0][1] / H[0][0]) * half};
  } else if (!H[1][1].is_zero()) {
    out.normal_form = {H[1][1] * half, (H[0][0] - H[0][1] * H[0][1] / H[1][1]) * half};
  } else {
    out.normal_form = {H[0][1], -H[0][1]};
  }
  out.factored = false;
  return out;
}

// ---- QPoly ----

QPoly QPoly::constant(std::size_t nvars, const Rational& c) {
  QPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

QPoly QPoly::variable(std::size_t nvars, std::size_t i) {
  QPoly p(nvars);
  Exponent e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, Rational(1));
  return p;
}

long QPoly::degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0L));
  return d;
}

void QPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("QPoly: exponent length mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("QPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("QPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("QPoly: variable count mismatch");
  QPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      QPoly::Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

QPoly operator*(QPoly a, const Rational& c) {
  QPoly out(a.nvars_);
  for (const auto& [e, x] : a.terms_) out.add_term(e, x * c);
  return out;
}

QPoly to_qpoly(const LaurentNov& f) {
  QPoly p(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    for (long x : e)
      if (x < 0) throw std::invalid_argument("polynomial has a negative exponent");
    if (c.terms().size() != 1 || sgn(c.terms().front().exponent) != 0 || !c.terms().front().coeff.is_real())
      throw std::invalid_argument("polynomial coefficients must be rational constants");
    p.add_term(e, c.terms().front().coeff.re());
  }
  return p;
}

QPoly parse_qpoly(const std::string& text, const std::vector<std::string>& vars) {
  return to_qpoly(parse_laurent(text, vars));
}

std::string to_string(const QPoly& p, const std::vector<std::string>& vars) {
  LaurentNov f(vars);
  for (const auto& [e, c] : p.terms()) f.add_term(e, NovikovSeries(GaussianRational(c), Rational(kDefaultTruncation)));
  return to_string(f);
}

MFPair mf_rank_one(const QPoly& a, const QPoly& b) { return {{{a}}, {{b}}}; }

MFPair mf_direct_sum(const MFPair& M, const MFPair& N) {
  const std::size_t r = M.rank(), s = N.rank();
  std::size_t nv = 0;
  if (r) nv = M.A[0][0].nvars();
  else if (s) nv = N.A[0][0].nvars();
  auto block = [&](const QPolyMatrix& X, const QPolyMatrix& Y) {
    QPolyMatrix out(r + s, std::vector<QPoly>(r + s, QPoly(nv)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out[i][j] = X[i][j];
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) out[r + i][r + j] = Y[i][j];
    return out;
  };
  return {block(M.A, N.A), block(M.B, N.B)};
}

MFPair mf_shift(const MFPair& M) { return {M.B, M.A}; }

namespace {

QPolyMatrix matmul(const QPolyMatrix& X, const QPolyMatrix& Y, std::size_t nv) {
  const std::size_t r = X.size(), c = Y.empty() ? 0 : Y[0].size(), inner = Y.size();
  QPolyMatrix out(r, std::vector<QPoly>(c, QPoly(nv)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < inner; ++k) out[i][j] += X[i][k] * Y[k][j];
  return out;
}

bool square(const QPolyMatrix& X, std::size_t r) {
  return X.size() == r && std::all_of(X.begin(), X.end(), [&](const auto& row) { return row.size() == r; });
}

}  // namespace

bool verify_mf(const QPoly& f, const MFPair& M) {
  const std::size_t r = M.rank();
  if (r == 0 || !square(M.A, r) || !square(M.B, r)) return false;
  const std::size_t nv = f.nvars();
  for (const auto* X : {&M.A, &M.B})
    for (const auto& row : *X)
      for (const auto& p : row)
        if (p.nvars() != nv) return false;
  QPolyMatrix fid(r, std::vector<QPoly>(r, QPoly(nv)));
  for (std::size_t i = 0; i < r; ++i) fid[i][i] = f;
  return matmul(M.A, M.B, nv) == fid && matmul(M.B, M.A, nv) == fid;
}

namespace {

using SparseVec = std::map<long, Rational>;

class SparseEchelon {
 public:
  bool insert(SparseVec v) {
    while (!v.empty()) {
      auto [p, lead] = *v.begin();
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        rows_.emplace(p, std::move(v));
        return true;
      }
      Rational f = lead / it->second.begin()->second;
      for (const auto& [k, x] : it->second) {
        auto [jt, inserted] = v.try_emplace(k, -f * x);
        if (!inserted) {
          jt->second -= f * x;
          if (sgn(jt->second) == 0) v.erase(jt);
        }
      }
    }
    return false;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<long, SparseVec> rows_;
};

std::vector<IExp> monomials_up_to(std::size_t nv, long cap) {
  std::vector<IExp> out;
  IExp e(nv, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == nv) {
      out.push_back(e);
      return;
    }
    for (long d = 0; d <= left; ++d) {
      e[i] = d;
      rec(i + 1, left - d);
    }
    e[i] = 0;
  };
  rec(0, cap);
  return out;
}

QPolyMatrix full_differential(const MFPair& M, std::size_t nv) {
  const std::size_t r = M.rank();
  QPolyMatrix d(2 * r, std::vector<QPoly>(2 * r, QPoly(nv)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      d[i][r + j] = M.A[i][j];
      d[r + i][j] = M.B[i][j];
    }
  return d;
}

struct ParityRanks {
  long cols = 0;
  long rank_d = 0;
  long rank_pd = 0;
};

}  // namespace

GradedRanks mf_hom_ranks_at(const QPoly& f, const MFPair& M, const MFPair& N, long degree_cap) {
  if (degree_cap < 0) throw std::invalid_argument("mf_hom_ranks: degree_cap must be nonnegative");
  const std::size_t nv = f.nvars();
  const std::size_t rM = M.rank(), rN = N.rank();
  auto dM = full_differential(M, nv);
  auto dN = full_differential(N, nv);
  auto mons = monomials_up_to(nv, degree_cap);

  ParityRanks pr[2];
  for (int parity = 0; parity < 2; ++parity) {
    std::map<std::tuple<std::size_t, std::size_t, IExp>, long> key;
    std::vector<long> key_degree;
    auto key_of = [&](std::size_t a, std::size_t b, const IExp& e) {
      auto [it, inserted] = key.try_emplace({a, b, e}, static_cast<long>(key_degree.size()));
      if (inserted) key_degree.push_back(std::accumulate(e.begin(), e.end(), 0L));
      return it->second;
    };
    SparseEchelon full, top;
    const Rational sign = parity == 0 ? Rational(-1) : Rational(1);  // D h = dN h - (-1)^|h| h dM
    for (std::size_t i = 0; i < 2 * rN; ++i)
      for (std::size_t j = 0; j < 2 * rM; ++j) {
        int pi = i >= rN ? 1 : 0, pj = j >= rM ? 1 : 0;
        if ((pi + pj) % 2 != parity) continue;
        for (const auto& mu : mons) {
          ++pr[parity].cols;
          SparseVec v;
          auto add = [&](std::size_t a, std::size_t b, const QPoly& p, const Rational& s) {
            for (const auto& [e, c] : p.terms()) {
              IExp ee(nv);
              for (std::size_t t = 0; t < nv; ++t) ee[t] = e[t] + mu[t];
              long k = key_of(a, b, ee);
              auto [it, inserted] = v.try_emplace(k, s * c);
              if (!inserted) {
                it->second += s * c;
                if (sgn(it->second) == 0) v.erase(it);
              }
            }
          };
          for (std::size_t a = 0; a < 2 * rN; ++a)
            if (!dN[a][i].is_zero()) add(a, j, dN[a][i], Rational(1));
          for (std::size_t b = 0; b < 2 * rM; ++b)
            if (!dM[j][b].is_zero()) add(i, b, dM[j][b], sign);
          SparseVec above;
          for (const auto& [k, x] : v)
            if (key_degree[static_cast<std::size_t>(k)] > degree_cap) above.emplace(k, x);
          full.insert(std::move(v));
          top.insert(std::move(above));
        }
      }
    pr[parity].rank_d = static_cast<long>(full.rank());
    pr[parity].rank_pd = static_cast<long>(top.rank());
  }
  GradedRanks out;
  out.even = (pr[0].cols - pr[0].rank_d) - (pr[1].rank_d - pr[1].rank_pd);
  out.odd = (pr[1].cols - pr[1].rank_d) - (pr[0].rank_d - pr[0].rank_pd);
  return out;
}

GradedRanks mf_hom_ranks(const QPoly& f, const MFPair& M, const MFPair& N, long degree_cap) {
  if (degree_cap < 1) throw std::invalid_argument("mf_hom_ranks: degree_cap must be at least 1");
  if (!verify_mf(f, M)) throw std::invalid_argument("mf_hom_ranks: M is not a matrix factorization of f");
  if (!verify_mf(f, N)) throw std::invalid_argument("mf_hom_ranks: N is not a matrix factorization of f");
  auto lo = mf_hom_ranks_at(f, M, N, degree_cap - 1);
  auto hi = mf_hom_ranks_at(f, M, N, degree_cap);
  if (!(lo == hi))
    throw std::runtime_error("mf_hom_ranks: ranks changed between degree caps " + std::to_string(degree_cap - 1) + " and " +
                             std::to_string(degree_cap) + "; raise degree_cap");
  return hi;
}

TotalAlgebra dsing_total_algebra(int p, long degree_cap) {
  if (p < 0) throw std::invalid_argument("dsing_total_algebra: p must be nonnegative");
  TotalAlgebra out;
  for (int j = 0; j < p; ++j) {
    QPoly x = QPoly::variable(2, 0), y = QPoly::variable(2, 1);
    auto K = mf_rank_one(x, y);
    auto r = mf_hom_ranks(x * y, K, K, degree_cap);
    out.per_node.push_back(r);
    out.even += r.even;
    out.odd += r.odd;
  }
  out.dimension = out.even + out.odd;
  return out;
}

namespace {

Graded trimmed(Graded g, std::size_t min_len) {
  while (g.size() > min_len && g.back() == 0) g.pop_back();
  return g;
}

}  // namespace

BeilinsonResult beilinson_rank(const std::vector<Graded>& exceptional_ends, const std::vector<Graded>& hom_to,
                               const std::vector<Graded>& hom_from) {
  const std::size_t m = hom_to.size();
  if (m == 0 || exceptional_ends.size() != m || hom_from.size() != m)
    throw std::invalid_argument("beilinson_rank: mismatched lengths");
  for (const auto* list : {&exceptional_ends, &hom_to, &hom_from})
    for (const auto& g : *list) {
      if (g.empty()) throw std::invalid_argument("beilinson_rank: empty graded dimension");
      for (long x : g)
        if (x < 0) throw std::invalid_argument("beilinson_rank: negative rank");
    }
  for (const auto& e : exceptional_ends)
    if (trimmed(e, 1) != Graded{1}) throw std::invalid_argument("beilinson_rank: exceptional object must have End = (1)");
  Graded total;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& a = hom_to[r];
    const auto& b = hom_from[m - 1 - r];
    if (total.size() < a.size() + b.size() - 1) total.resize(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) total[i + j] += a[i] * b[j];
  }
  BeilinsonResult out;
  out.graded = trimmed(total, 2);
  out.total = std::accumulate(out.graded.begin(), out.graded.end(), 0L);
  return out;
}

}  // namespace syzkit
