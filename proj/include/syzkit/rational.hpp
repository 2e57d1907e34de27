#pragma once

// Exact scalars: rationals (GMP) and Gaussian rationals Q(i).

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syzkit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", "-p/q" or a decimal literal such as "0.25" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
/// Exact binary value of a finite double.
Rational rational_from_double(double x);
/// Best approximation with denominator <= max_den (continued fractions).
Rational rational_approx(double x, const Integer& max_den);
bool is_integer(const Rational& q);
/// Floor of an exact rational.
Integer floor_of(const Rational& q);
/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Element re + i*im of the Gaussian rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
  GaussianRational(long v) : re_(v) {}                   // NOLINT(implicit)
  GaussianRational(int v) : re_(v) {}                    // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// "p/q" for real values, "(a+bi)" otherwise.
std::string to_string(const GaussianRational& z);
/// Exact square root in Q(i) if one exists.
std::optional<GaussianRational> exact_sqrt(const GaussianRational& z);
/// Recognizes a complex double as a Gaussian rational with bounded denominators.
GaussianRational gaussian_approx(std::complex<double> z, const Integer& max_den);

struct RationalLess {
  bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

}  // namespace syzkit
