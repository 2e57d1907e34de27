#pragma once

// Text syntax for Laurent polynomials over the Novikov field, e.g.
//   "z1 + z2 + T(-1/2)*z1*z2",  "w0 + (1 + T^(-1/10) w0) v",  "x^2 - T^3/y".
// T is the Novikov parameter (T(e) and T^e both mean T to the power e),
// i is the imaginary unit, juxtaposition multiplies, and variable names are a
// letter followed by digits.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syzkit/laurent.hpp"

namespace syzkit {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Variable names appearing in the text, in natural order (x2 before x10).
std::vector<std::string> collect_variables(std::string_view text);

/// Parses over `vars` (all names in the text must be listed) or, when `vars`
/// is empty, over collect_variables(text).
LaurentNov parse_laurent(std::string_view text, std::vector<std::string> vars = {},
                         Rational truncation = Rational(kDefaultTruncation));

/// A single series such as "1 - T^(1/2) + 2*T" (no variables allowed).
NovikovSeries parse_series(std::string_view text, Rational truncation = Rational(kDefaultTruncation));

}  // namespace syzkit
