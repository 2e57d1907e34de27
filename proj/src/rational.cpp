#include "syzkit/rational.hpp"

#include <cmath>
#include <limits>

namespace syzkit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational literal: " + s);
    bool neg = !s.empty() && s.front() == '-';
    std::string int_part = s.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
    std::string frac_part = s.substr(dot + 1);
    if (int_part.empty()) int_part = "0";
    for (char c : int_part + frac_part)
      if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal: " + s);
    Integer num(int_part + frac_part, 10);
    Integer den(1);
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw std::invalid_argument("bad rational literal: " + s);
  }
  auto slash = s.find('/');
  if (slash != std::string::npos && (slash == 0 || slash + 1 == s.size()))
    throw std::invalid_argument("bad rational literal: " + s);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return Rational(x);
}

Rational rational_approx(double x, const Integer& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  // Convergents of the continued fraction of x.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    Integer ai(a);
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
    if (std::abs(to_double(Rational(p1, q1)) - x) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x))
      break;
  }
  if (q1 == 0) return Rational(x);
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational out(n, d);
  out.canonicalize();
  return out;
}

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero in Q(i)");
    re_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re());
  std::string s = "(" + to_string(z.re());
  if (sgn(z.im()) >= 0) s += "+";
  s += to_string(z.im()) + "i)";
  return s;
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.is_real()) {
    if (auto r = exact_sqrt(z.re())) return GaussianRational(*r);
    if (auto r = exact_sqrt(Rational(-z.re()))) return GaussianRational(Rational(0), *r);
    return std::nullopt;
  }
  // (a+bi)^2 = x+yi  =>  a^2 = (x+|z|)/2, b = y/(2a).
  auto modulus = exact_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  Rational half_sum = (z.re() + *modulus) / 2;
  auto a = exact_sqrt(half_sum);
  if (!a || sgn(*a) == 0) return std::nullopt;
  Rational b = z.im() / (2 * *a);
  return GaussianRational(*a, b);
}

GaussianRational gaussian_approx(std::complex<double> z, const Integer& max_den) {
  return {rational_approx(z.real(), max_den), rational_approx(z.imag(), max_den)};
}

}  // namespace syzkit
