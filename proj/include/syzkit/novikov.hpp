#pragma once

// Truncated Novikov series  sum_i a_i T^{e_i}  with rational exponents and
// Gaussian-rational coefficients. Every stored exponent is below the
// truncation order; terms at or above it are dropped after each operation.

#include <optional>
#include <string>
#include <vector>

#include "syzkit/rational.hpp"

namespace syzkit {

inline constexpr long kDefaultTruncation = 10;

/// Lowest exponent of a series, or +infinity for the zero series.
class Valuation {
 public:
  Valuation() = default;  // +infinity
  explicit Valuation(Rational v) : value_(std::move(v)) {}
  static Valuation infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;

  friend bool operator==(const Valuation& a, const Valuation& b);
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

 private:
  std::optional<Rational> value_;
};

std::string to_string(const Valuation& v);

class NovikovSeries {
 public:
  struct Term {
    Rational exponent;
    GaussianRational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  NovikovSeries() : truncation_(kDefaultTruncation) {}
  explicit NovikovSeries(Rational truncation) : truncation_(std::move(truncation)) {}
  /// Constant series c*T^0.
  NovikovSeries(const GaussianRational& c, Rational truncation);

  static NovikovSeries zero(Rational truncation = Rational(kDefaultTruncation)) {
    return NovikovSeries(std::move(truncation));
  }
  static NovikovSeries one(Rational truncation = Rational(kDefaultTruncation));
  /// c * T^exponent (dropped if exponent >= truncation).
  static NovikovSeries monomial(const GaussianRational& c, const Rational& exponent,
                                Rational truncation = Rational(kDefaultTruncation));
  /// Builds from arbitrary (exponent, coefficient) pairs; merges and canonicalizes.
  static NovikovSeries from_terms(std::vector<Term> terms, Rational truncation = Rational(kDefaultTruncation));

  const std::vector<Term>& terms() const { return terms_; }
  const Rational& truncation() const { return truncation_; }
  bool is_zero() const { return terms_.empty(); }

  Valuation valuation() const;
  /// Coefficient of the lowest-order term. Precondition: nonzero.
  const GaussianRational& leading_coeff() const;
  /// Coefficient of T^e (zero if absent).
  GaussianRational coeff_at(const Rational& e) const;

  /// Membership in U_Lambda up to the norm condition: valuation exactly 0.
  bool is_unitary() const;
  /// Valuation 0 and |a_0| = 1 (the norm-one part of U_Lambda).
  bool has_unit_norm() const;

  /// Same terms, truncated at min(current, order).
  NovikovSeries retruncated(const Rational& order) const;
  /// Same terms under a new truncation order; terms at or above it are dropped.
  NovikovSeries with_truncation(const Rational& order) const;
  /// Multiplies by T^shift (exact, truncation unchanged).
  NovikovSeries shifted(const Rational& shift) const;

  NovikovSeries operator-() const;
  NovikovSeries& operator+=(const NovikovSeries& o);
  NovikovSeries& operator-=(const NovikovSeries& o);
  NovikovSeries& operator*=(const NovikovSeries& o);
  NovikovSeries& operator*=(const GaussianRational& c);

  friend NovikovSeries operator+(NovikovSeries a, const NovikovSeries& b) { return a += b; }
  friend NovikovSeries operator-(NovikovSeries a, const NovikovSeries& b) { return a -= b; }
  friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
  friend NovikovSeries operator*(NovikovSeries a, const GaussianRational& c) { return a *= c; }
  friend NovikovSeries operator/(const NovikovSeries& a, const NovikovSeries& b);

  /// Term lists equal (truncation orders are not compared).
  friend bool operator==(const NovikovSeries& a, const NovikovSeries& b) { return a.terms_ == b.terms_; }

  /// Approximate value at T = t (t > 0), for diagnostics.
  std::complex<double> evaluate(double t) const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
  Rational truncation_;
};

NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries neg(const NovikovSeries& a);
/// Integer power; negative k requires a nonzero series.
NovikovSeries pow_int(const NovikovSeries& a, long k);
/// Multiplicative inverse: leading monomial factored out, geometric series on
/// the remainder until exponents reach the truncation order.
NovikovSeries invert(const NovikovSeries& a);
Valuation valuation(const NovikovSeries& a);
bool is_unitary(const NovikovSeries& a);

/// Human-readable form such as "1 - T^(1/2) + 2*T".
std::string to_string(const NovikovSeries& s);

}  // namespace syzkit
