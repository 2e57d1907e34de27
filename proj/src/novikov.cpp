#include "syzkit/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace syzkit {

const Rational& Valuation::value() const {
  if (!value_) throw std::logic_error("valuation of the zero series is +infinity");
  return *value_;
}

bool operator==(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  int c = cmp(*a.value_, *b.value_);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(Rational(*a.value_ + *b.value_));
}

std::string to_string(const Valuation& v) { return v.is_infinite() ? "+inf" : to_string(v.value()); }

NovikovSeries::NovikovSeries(const GaussianRational& c, Rational truncation) : truncation_(std::move(truncation)) {
  if (!c.is_zero()) terms_.push_back({Rational(0), c});
  canonicalize();
}

NovikovSeries NovikovSeries::one(Rational truncation) { return NovikovSeries(GaussianRational(1), std::move(truncation)); }

NovikovSeries NovikovSeries::monomial(const GaussianRational& c, const Rational& exponent, Rational truncation) {
  NovikovSeries s(std::move(truncation));
  if (!c.is_zero()) s.terms_.push_back({exponent, c});
  s.canonicalize();
  return s;
}

NovikovSeries NovikovSeries::from_terms(std::vector<Term> terms, Rational truncation) {
  NovikovSeries s(std::move(truncation));
  s.terms_ = std::move(terms);
  std::sort(s.terms_.begin(), s.terms_.end(),
            [](const Term& a, const Term& b) { return cmp(a.exponent, b.exponent) < 0; });
  std::vector<Term> merged;
  for (auto& t : s.terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  s.terms_ = std::move(merged);
  s.canonicalize();
  return s;
}

void NovikovSeries::canonicalize() {
  std::erase_if(terms_, [&](const Term& t) { return t.coeff.is_zero() || cmp(t.exponent, truncation_) >= 0; });
}

Valuation NovikovSeries::valuation() const {
  if (terms_.empty()) return Valuation::infinity();
  return Valuation(terms_.front().exponent);
}

const GaussianRational& NovikovSeries::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of the zero series");
  return terms_.front().coeff;
}

GaussianRational NovikovSeries::coeff_at(const Rational& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Rational& x) { return cmp(t.exponent, x) < 0; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return GaussianRational(0);
}

bool NovikovSeries::is_unitary() const { return !terms_.empty() && sgn(terms_.front().exponent) == 0; }

bool NovikovSeries::has_unit_norm() const { return is_unitary() && terms_.front().coeff.norm() == 1; }

NovikovSeries NovikovSeries::retruncated(const Rational& order) const {
  NovikovSeries s = *this;
  if (cmp(order, s.truncation_) < 0) s.truncation_ = order;
  s.canonicalize();
  return s;
}

NovikovSeries NovikovSeries::with_truncation(const Rational& order) const {
  NovikovSeries s = *this;
  s.truncation_ = order;
  s.canonicalize();
  return s;
}

NovikovSeries NovikovSeries::shifted(const Rational& shift) const {
  NovikovSeries s = *this;
  for (auto& t : s.terms_) t.exponent += shift;
  s.canonicalize();
  return s;
}

NovikovSeries NovikovSeries::operator-() const {
  NovikovSeries s = *this;
  for (auto& t : s.terms_) t.coeff = -t.coeff;
  return s;
}

NovikovSeries& NovikovSeries::operator+=(const NovikovSeries& o) {
  if (cmp(o.truncation_, truncation_) < 0) truncation_ = o.truncation_;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && cmp(terms_[i].exponent, o.terms_[j].exponent) < 0)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || cmp(o.terms_[j].exponent, terms_[i].exponent) < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Term t = std::move(terms_[i++]);
      t.coeff += o.terms_[j++].coeff;
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
  canonicalize();
  return *this;
}

NovikovSeries& NovikovSeries::operator-=(const NovikovSeries& o) { return *this += -o; }

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
  Rational trunc = cmp(a.truncation_, b.truncation_) < 0 ? a.truncation_ : b.truncation_;
  std::map<Rational, GaussianRational, RationalLess> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Rational e = s.exponent + t.exponent;
      if (cmp(e, trunc) >= 0) break;  // b's exponents increase
      auto [it, inserted] = acc.try_emplace(std::move(e), s.coeff * t.coeff);
      if (!inserted) it->second += s.coeff * t.coeff;
    }
  }
  NovikovSeries out(trunc);
  out.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) out.terms_.push_back({e, std::move(c)});
  out.canonicalize();
  return out;
}

NovikovSeries& NovikovSeries::operator*=(const NovikovSeries& o) { return *this = *this * o; }

NovikovSeries& NovikovSeries::operator*=(const GaussianRational& c) {
  for (auto& t : terms_) t.coeff *= c;
  canonicalize();
  return *this;
}

NovikovSeries operator/(const NovikovSeries& a, const NovikovSeries& b) { return a * invert(b); }

std::complex<double> NovikovSeries::evaluate(double t) const {
  std::complex<double> sum = 0;
  for (const auto& term : terms_) sum += term.coeff.to_complex() * std::pow(t, to_double(term.exponent));
  return sum;
}

NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b) { return a + b; }
NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b) { return a * b; }
NovikovSeries neg(const NovikovSeries& a) { return -a; }

NovikovSeries invert(const NovikovSeries& a) {
  if (a.is_zero()) throw std::domain_error("invert: zero series");
  const Rational& v = a.terms().front().exponent;
  GaussianRational lead_inv = a.terms().front().coeff.inverse();
  // a = lead * T^v * (1 + r), r has strictly positive exponents.
  // The series 1/(1+r) is needed below exponent trunc + v.
  Rational inner_trunc = a.truncation() + v;
  std::vector<NovikovSeries::Term> rest;
  for (std::size_t i = 1; i < a.terms().size(); ++i) {
    const auto& t = a.terms()[i];
    rest.push_back({t.exponent - v, t.coeff * lead_inv});
  }
  if (sgn(inner_trunc) <= 0) return NovikovSeries::zero(a.truncation());
  NovikovSeries neg_r = -NovikovSeries::from_terms(std::move(rest), inner_trunc);
  NovikovSeries sum = NovikovSeries::one(inner_trunc);
  NovikovSeries power = sum;
  while (true) {
    power = power * neg_r;
    if (power.is_zero()) break;
    sum += power;
  }
  Rational wide = a.truncation() + abs(v) + 1;
  NovikovSeries out = sum.with_truncation(wide).shifted(-v) * lead_inv;
  return out.with_truncation(a.truncation());
}

NovikovSeries pow_int(const NovikovSeries& a, long k) {
  if (k < 0) {
    if (a.is_zero()) throw std::domain_error("pow_int: negative power of a non-invertible series");
    return pow_int(invert(a), -k);
  }
  NovikovSeries result = NovikovSeries::one(a.truncation());
  NovikovSeries base = a;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Valuation valuation(const NovikovSeries& a) { return a.valuation(); }
bool is_unitary(const NovikovSeries& a) { return a.is_unitary(); }

std::string to_string(const NovikovSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : s.terms()) {
    GaussianRational c = t.coeff;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) c = -c;
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    bool unit = c == GaussianRational(1);
    if (sgn(t.exponent) == 0) {
      out += to_string(c);
      continue;
    }
    if (!unit) out += to_string(c) + "*";
    out += "T";
    if (t.exponent != 1) {
      out += is_integer(t.exponent) && sgn(t.exponent) > 0 ? "^" + to_string(t.exponent)
                                                           : "^(" + to_string(t.exponent) + ")";
    }
  }
  return out;
}

}  // namespace syzkit
