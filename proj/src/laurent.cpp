#include "syzkit/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace syzkit {

LaurentNov::LaurentNov(std::vector<std::string> vars, Rational truncation)
    : vars_(std::move(vars)), truncation_(std::move(truncation)) {}

LaurentNov LaurentNov::constant(std::vector<std::string> vars, const NovikovSeries& c) {
  LaurentNov f(std::move(vars), c.truncation());
  f.add_term(Exponent(f.nvars(), 0), c);
  return f;
}

LaurentNov LaurentNov::variable(std::vector<std::string> vars, const std::string& name) {
  LaurentNov f(std::move(vars));
  Exponent e(f.nvars(), 0);
  e[f.require_index(name)] = 1;
  f.add_term(e, NovikovSeries::one());
  return f;
}

LaurentNov LaurentNov::monomial(std::vector<std::string> vars, Exponent e, const NovikovSeries& c) {
  LaurentNov f(std::move(vars), c.truncation());
  if (e.size() != f.nvars()) throw std::invalid_argument("monomial: exponent length mismatch");
  f.add_term(e, c);
  return f;
}

std::optional<std::size_t> LaurentNov::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t LaurentNov::require_index(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
  return *i;
}

void LaurentNov::add_term(const Exponent& e, const NovikovSeries& c) {
  if (e.size() != vars_.size()) throw std::invalid_argument("add_term: exponent length mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NovikovSeries LaurentNov::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? NovikovSeries::zero(truncation_) : it->second;
}

LaurentNov LaurentNov::with_vars(const std::vector<std::string>& vars) const {
  LaurentNov out(vars, truncation_);
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = out.require_index(vars_[i]);
  for (const auto& [e, c] : terms_) {
    Exponent ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
    out.add_term(ne, c);
  }
  return out;
}

LaurentNov LaurentNov::with_truncation(const Rational& order) const {
  LaurentNov out(vars_, order);
  for (const auto& [e, c] : terms_) out.add_term(e, c.with_truncation(order));
  return out;
}

void LaurentNov::check_compatible(const LaurentNov& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("Laurent polynomials over different variable lists");
}

LaurentNov LaurentNov::operator-() const {
  LaurentNov out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentNov& LaurentNov::operator+=(const LaurentNov& o) {
  check_compatible(o);
  if (cmp(o.truncation_, truncation_) < 0) truncation_ = o.truncation_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentNov& LaurentNov::operator-=(const LaurentNov& o) { return *this += -o; }

LaurentNov& LaurentNov::operator*=(const NovikovSeries& c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

LaurentNov operator*(const LaurentNov& a, const LaurentNov& b) {
  a.check_compatible(b);
  LaurentNov out(a.vars_, cmp(a.truncation_, b.truncation_) < 0 ? a.truncation_ : b.truncation_);
  LaurentNov::Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const LaurentNov& a, const LaurentNov& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

LaurentNov LaurentNov::pow(long k) const {
  if (k < 0) {
    if (terms_.size() != 1) return syzkit::invert(*this).pow(-k);
    const auto& [e, c] = *terms_.begin();
    Exponent ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] * k;
    return monomial(vars_, ne, pow_int(c, k));
  }
  LaurentNov result = constant(vars_, NovikovSeries::one(truncation_));
  LaurentNov base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentNov LaurentNov::derivative(std::size_t var) const {
  LaurentNov out(vars_, truncation_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent ne = e;
    ne[var] -= 1;
    out.add_term(ne, c * GaussianRational(e[var]));
  }
  return out;
}

LaurentNov LaurentNov::substitute(std::size_t var, const LaurentNov& repl) const {
  check_compatible(repl);
  LaurentNov out(vars_, truncation_);
  std::map<long, LaurentNov> powers;
  for (const auto& [e, c] : terms_) {
    long k = e[var];
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, repl.pow(k)).first;
    Exponent rest = e;
    rest[var] = 0;
    out += monomial(vars_, rest, c) * it->second;
  }
  return out;
}

std::pair<long, long> LaurentNov::degree_range(std::size_t var) const {
  if (terms_.empty()) return {0, 0};
  long lo = terms_.begin()->first[var], hi = lo;
  for (const auto& [e, c] : terms_) {
    lo = std::min(lo, e[var]);
    hi = std::max(hi, e[var]);
  }
  return {lo, hi};
}

Valuation LaurentNov::valuation() const {
  Valuation v = Valuation::infinity();
  for (const auto& [e, c] : terms_) v = std::min(v, c.valuation());
  return v;
}

NovikovSeries LaurentNov::evaluate(const std::vector<NovikovSeries>& point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("evaluate: point dimension mismatch");
  NovikovSeries sum = NovikovSeries::zero(truncation_);
  for (const auto& [e, c] : terms_) {
    NovikovSeries term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= pow_int(point[i], e[i]);
    sum += term;
  }
  return sum;
}

std::complex<double> LaurentNov::evaluate(const std::vector<std::complex<double>>& point, double t) const {
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> term = c.evaluate(t);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= std::pow(point[i], static_cast<int>(e[i]));
    sum += term;
  }
  return sum;
}

LaurentNov invert(const LaurentNov& f) {
  if (f.is_zero()) throw std::domain_error("invert: zero Laurent polynomial");
  Valuation vmin = f.valuation();
  const LaurentNov::Exponent* lead_e = nullptr;
  for (const auto& [e, c] : f.terms()) {
    if (c.valuation() == vmin) {
      if (lead_e) throw std::domain_error("invert: no unique lowest-valuation monomial in " + to_string(f));
      lead_e = &e;
    }
  }
  // The lowest-order term of the lead coefficient is the monomial we factor out.
  const NovikovSeries& lead_c = f.terms().at(*lead_e);
  NovikovSeries lead_mono = NovikovSeries::monomial(lead_c.leading_coeff(), vmin.value(), f.truncation());
  LaurentNov lead = LaurentNov::monomial(f.vars(), *lead_e, lead_mono);
  // f = lead * (1 + r); every term of r has strictly positive valuation.
  Rational inner = f.truncation() + vmin.value();
  if (sgn(inner) <= 0) return LaurentNov(f.vars(), f.truncation());
  Rational wide = f.truncation() + abs(vmin.value()) + 1;
  LaurentNov lead_inv = lead.with_truncation(wide).pow(-1);
  LaurentNov r = (lead_inv * f.with_truncation(wide)).with_truncation(inner);
  r -= LaurentNov::constant(f.vars(), NovikovSeries::one(inner));
  LaurentNov neg_r = -r;
  LaurentNov sum = LaurentNov::constant(f.vars(), NovikovSeries::one(inner));
  LaurentNov power = sum;
  while (true) {
    power = power * neg_r;
    if (power.is_zero()) break;
    sum += power;
  }
  return (sum.with_truncation(wide) * lead_inv).with_truncation(f.truncation());
}

std::optional<LaurentNov> exact_divide(const LaurentNov& f, const LaurentNov& g, std::size_t var) {
  if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
  for (const auto& [e, c] : g.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw std::invalid_argument("exact_divide: divisor must involve one variable");
  if (f.is_zero()) return LaurentNov(f.vars(), f.truncation());
  auto [g_lo, g_hi] = g.degree_range(var);
  LaurentNov::Exponent top(g.nvars(), 0);
  top[var] = g_hi;
  const NovikovSeries& g_top = g.terms().at(top);
  if (g_top.terms().size() != 1) return std::nullopt;
  NovikovSeries g_top_inv = invert(g_top);

  auto [f_lo, f_hi] = f.degree_range(var);
  LaurentNov q(f.vars(), f.truncation());
  LaurentNov r = f;
  while (!r.is_zero()) {
    auto [r_lo, r_hi] = r.degree_range(var);
    long d = r_hi - g_hi;
    if (d < f_lo - g_lo) return std::nullopt;
    LaurentNov step(f.vars(), f.truncation());
    for (const auto& [e, c] : r.terms()) {
      if (e[var] != r_hi) continue;
      LaurentNov::Exponent qe = e;
      qe[var] = d;
      step.add_term(qe, c * g_top_inv);
    }
    q += step;
    LaurentNov before = r;
    r -= step * g;
    if (r == before) return std::nullopt;
  }
  return q;
}

std::string to_string(const LaurentNov& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.vars()[i];
      if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
    }
    std::string coeff = to_string(c);
    bool simple = c.terms().size() == 1;
    if (!first) out += " + ";
    first = false;
    if (mono.empty()) {
      out += simple ? coeff : "(" + coeff + ")";
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += (simple ? coeff : "(" + coeff + ")") + "*" + mono;
    }
  }
  return out;
}

}  // namespace syzkit
