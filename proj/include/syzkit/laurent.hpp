#pragma once

// Laurent polynomials in named chart coordinates with NovikovSeries
// coefficients.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/novikov.hpp"

namespace syzkit {

class LaurentNov {
 public:
  using Exponent = std::vector<long>;
  using TermMap = std::map<Exponent, NovikovSeries>;

  LaurentNov() : truncation_(kDefaultTruncation) {}
  explicit LaurentNov(std::vector<std::string> vars, Rational truncation = Rational(kDefaultTruncation));

  static LaurentNov constant(std::vector<std::string> vars, const NovikovSeries& c);
  static LaurentNov variable(std::vector<std::string> vars, const std::string& name);
  static LaurentNov monomial(std::vector<std::string> vars, Exponent e, const NovikovSeries& c);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require_index(const std::string& name) const;
  const TermMap& terms() const { return terms_; }
  const Rational& truncation() const { return truncation_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^e to the polynomial.
  void add_term(const Exponent& e, const NovikovSeries& c);
  NovikovSeries coeff(const Exponent& e) const;

  /// Same polynomial over a larger (or reordered) variable list.
  LaurentNov with_vars(const std::vector<std::string>& vars) const;
  LaurentNov with_truncation(const Rational& order) const;

  LaurentNov operator-() const;
  LaurentNov& operator+=(const LaurentNov& o);
  LaurentNov& operator-=(const LaurentNov& o);
  LaurentNov& operator*=(const NovikovSeries& c);
  friend LaurentNov operator+(LaurentNov a, const LaurentNov& b) { return a += b; }
  friend LaurentNov operator-(LaurentNov a, const LaurentNov& b) { return a -= b; }
  friend LaurentNov operator*(const LaurentNov& a, const LaurentNov& b);
  friend LaurentNov operator*(LaurentNov a, const NovikovSeries& c) { return a *= c; }
  friend bool operator==(const LaurentNov& a, const LaurentNov& b);

  /// Nonnegative power, or any power of a single monomial.
  LaurentNov pow(long k) const;
  LaurentNov derivative(std::size_t var) const;
  /// Replaces variable `var` by `repl` (over the same variable list).
  /// Negative powers of `repl` go through invert().
  LaurentNov substitute(std::size_t var, const LaurentNov& repl) const;

  /// Lowest and highest exponent of a variable among the stored terms.
  std::pair<long, long> degree_range(std::size_t var) const;
  /// Minimum valuation over coefficients.
  Valuation valuation() const;

  NovikovSeries evaluate(const std::vector<NovikovSeries>& point) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& point, double t) const;

 private:
  void check_compatible(const LaurentNov& o) const;
  std::vector<std::string> vars_;
  TermMap terms_;
  Rational truncation_;
};

/// Inverse of a polynomial with a unique minimal-valuation monomial, by a
/// geometric series in the remaining (strictly higher valuation) part.
LaurentNov invert(const LaurentNov& f);

/// Exact division f / g when g divides f as a polynomial in one variable with
/// Novikov coefficients (other variables are carried along).
std::optional<LaurentNov> exact_divide(const LaurentNov& f, const LaurentNov& g, std::size_t var);

std::string to_string(const LaurentNov& f);

}  // namespace syzkit
