#include "isbv/parser.hpp"

#include <cctype>

namespace isbv {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(message + " at offset " + std::to_string(position)),
      kind_(kind),
      position_(position) {}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarsPtr& vars, const ParseOptions& opts)
      : s_(text), vars_(vars), opts_(opts) {}

  QPoly run() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    QPoly r = expression();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseError::Kind k = ParseError::Kind::Syntax) {
    throw ParseError(k, pos_, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly one() const { return QPoly::from_int(vars_, Domain::rationals(), 1); }

  QPoly expression() {
    QPoly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  QPoly term() {
    QPoly acc = factor();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/')
        fail("division is not supported", ParseError::Kind::Division);
      if (!accept('*')) return acc;
      acc *= factor();
    }
  }

  Integer integer_literal() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  unsigned exponent() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected a positive integer exponent");
    std::size_t start = pos_;
    Integer e = integer_literal();
    if (e <= 0 || e > 0xFFFF) {
      pos_ = start;
      fail("exponent must be a positive integer below 65536");
    }
    return static_cast<unsigned>(e.get_ui());
  }

  QPoly factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (c == '(') {
      ++pos_;
      QPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) inner = inner.pow(exponent());
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(integer_literal());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        if (!opts_.allow_rational_literals) fail("division is not supported", ParseError::Kind::Division);
        ++pos_;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected an integer denominator");
        Integer den = integer_literal();
        if (den == 0) fail("zero denominator");
        value /= Rational(den);
      }
      if (pos_ < s_.size() && s_[pos_] == '^') fail("powers of literals are not supported");
      return QPoly::constant(vars_, Domain::rationals(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  s_[pos_] == '\''))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = vars_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'", ParseError::Kind::UnknownVariable);
      }
      unsigned e = 1;
      if (accept('^')) e = exponent();
      return QPoly::monomial(vars_, Domain::rationals(),
                             Monomial::variable(*idx, static_cast<Monomial::Exponent>(e)), Rational(1));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const VarsPtr& vars_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_poly(std::string_view text, const VarsPtr& vars, const ParseOptions& opts) {
  return Parser(text, vars, opts).run();
}

FpPoly parse_poly_mod(std::string_view text, const VarsPtr& vars, std::uint32_t p,
                      const ParseOptions& opts) {
  return reduce_mod(parse_poly(text, vars, opts), p);
}

}  // namespace isbv
