#include "syzkit/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace syzkit {

namespace {

enum class Tok { Num, Id, T, I, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      out.push_back({Tok::Num, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name(s.substr(start, i - start));
      if (name == "T") out.push_back({Tok::T, name, start});
      else if (name == "i") out.push_back({Tok::I, name, start});
      else out.push_back({Tok::Id, name, start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw ParseError("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.find_first_of("0123456789");
    std::string head = s.substr(0, k);
    long num = -1;
    if (k != std::string::npos) {
      std::string digits;
      for (std::size_t j = k; j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])); ++j) digits += s[j];
      if (!digits.empty() && digits.size() < 18) num = std::stol(digits);
    }
    return std::make_tuple(head, num, s);
  };
  return split(a) < split(b);
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string> vars, Rational trunc)
      : toks_(std::move(toks)), vars_(std::move(vars)), trunc_(std::move(trunc)) {}

  LaurentNov parse() {
    LaurentNov e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(peek().pos));
  }

  LaurentNov constant(const NovikovSeries& c) const { return LaurentNov::constant(vars_, c); }


  LaurentNov expr() {
    accept(Tok::Plus);
    LaurentNov acc = term();
    while (true) {
      if (accept(Tok::Plus)) acc += term();
      else if (accept(Tok::Minus)) acc -= term();
      else break;
    }
    return acc;
  }

  static bool starts_atom(Tok k) {
    return k == Tok::Num || k == Tok::Id || k == Tok::T || k == Tok::I || k == Tok::LParen;
  }

  LaurentNov term() {
    LaurentNov acc = power();
    while (true) {
      if (accept(Tok::Star)) {
        acc = acc * power();
      } else if (accept(Tok::Slash)) {
        LaurentNov d = power();
        if (d.is_zero()) fail("division by zero");
        acc = acc * invert(d);
      } else if (starts_atom(peek().kind)) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  LaurentNov power() {
    if (accept(Tok::Minus)) return -power();
    LaurentNov base = atom();
    if (accept(Tok::Caret)) {
      Rational e = exponent();
      if (!is_integer(e)) fail("non-integer power of an expression");
      base = base.pow(floor_of(e).get_si());
    }
    return base;
  }

  Rational number() {
    const Token& t = next();
    if (t.kind != Tok::Num) {
      --pos_;
      fail("expected a number");
    }
    try {
      return parse_rational(t.text);
    } catch (const std::exception&) {
      --pos_;
      fail("malformed number '" + t.text + "'");
    }
  }

  // signed rational, optionally p/q
  Rational signed_rational() {
    bool neg = accept(Tok::Minus);
    if (!neg) accept(Tok::Plus);
    Rational q = number();
    if (accept(Tok::Slash)) {
      Rational d = number();
      if (sgn(d) == 0) fail("zero denominator");
      q /= d;
    }
    return neg ? -q : q;
  }

  Rational exponent() {
    if (accept(Tok::LParen)) {
      Rational q = signed_rational();
      expect(Tok::RParen, "')'");
      return q;
    }
    bool neg = accept(Tok::Minus);
    Rational q = number();
    return neg ? -q : q;
  }

  LaurentNov atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Num:
        return constant(NovikovSeries(GaussianRational(number()), trunc_));
      case Tok::I:
        ++pos_;
        return constant(NovikovSeries(GaussianRational::i(), trunc_));
      case Tok::Id: {
        ++pos_;
        if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end())
          throw ParseError("unknown variable '" + t.text + "' at position " + std::to_string(t.pos));
        return LaurentNov::variable(vars_, t.text).with_truncation(trunc_);
      }
      case Tok::T: {
        ++pos_;
        Rational e(1);
        if (accept(Tok::LParen)) {
          e = signed_rational();
          expect(Tok::RParen, "')'");
        } else if (accept(Tok::Caret)) {
          e = exponent();
        }
        return constant(NovikovSeries::monomial(1, e, trunc_));
      }
      case Tok::LParen: {
        ++pos_;
        LaurentNov e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  Rational trunc_;
};

}  // namespace

std::vector<std::string> collect_variables(std::string_view text) {
  std::set<std::string> names;
  for (const auto& t : lex(text))
    if (t.kind == Tok::Id) names.insert(t.text);
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

LaurentNov parse_laurent(std::string_view text, std::vector<std::string> vars, Rational truncation) {
  auto toks = lex(text);
  if (vars.empty()) vars = collect_variables(text);
  if (toks.size() == 1) throw ParseError("empty expression");
  return Parser(std::move(toks), std::move(vars), std::move(truncation)).parse();
}

NovikovSeries parse_series(std::string_view text, Rational truncation) {
  if (!collect_variables(text).empty()) throw ParseError("series must not contain variables");
  LaurentNov f = parse_laurent(text, {}, truncation);
  return f.coeff({});
}

}  // namespace syzkit
