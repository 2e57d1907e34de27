#pragma once

// Hand-rolled random generators for property tests.

#include <random>

#include "syzkit/novikov.hpp"

namespace testgen {

inline syzkit::Rational rand_rational(std::mt19937_64& rng, long num_lo, long num_hi, long max_den) {
  std::uniform_int_distribution<long> num(num_lo, num_hi);
  std::uniform_int_distribution<long> den(1, max_den);
  syzkit::Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline syzkit::GaussianRational rand_coeff(std::mt19937_64& rng, bool complex_values) {
  syzkit::Rational re;
  do {
    re = rand_rational(rng, -5, 5, 3);
  } while (sgn(re) == 0);
  if (!complex_values) return re;
  return {re, rand_rational(rng, -3, 3, 2)};
}

/// Nonzero series with up to max_terms terms and exponents in [lo, hi).
inline syzkit::NovikovSeries rand_series(std::mt19937_64& rng, long lo, long hi, int max_terms,
                                         bool complex_values = false, long trunc = syzkit::kDefaultTruncation) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::vector<syzkit::NovikovSeries::Term> terms;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    long d = std::uniform_int_distribution<long>(1, 4)(rng);
    syzkit::Rational e(std::uniform_int_distribution<long>(lo * d, hi * d - 1)(rng), d);
    e.canonicalize();
    terms.push_back({e, rand_coeff(rng, complex_values)});
  }
  auto s = syzkit::NovikovSeries::from_terms(terms, syzkit::Rational(trunc));
  if (s.is_zero()) return syzkit::NovikovSeries::one(syzkit::Rational(trunc));
  return s;
}

}  // namespace testgen
