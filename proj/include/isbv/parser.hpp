#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "isbv/polynomial.hpp"

namespace isbv {

/// Syntax error, unknown variable, or unsupported division in polynomial text.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownVariable, Division };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  /// Byte offset into the input where the problem was detected.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

struct ParseOptions {
  /// Accept `a/b` integer literals. Off for user-facing input; the cache
  /// and report readers turn it on for printed Groebner bases.
  bool allow_rational_literals = false;
};

/// Grammar:
///   expression ::= term (('+'|'-') term)*
///   term       ::= factor ('*' factor)*
///   factor     ::= integer | variable | variable '^' n | '(' expression ')' ['^' n]
/// with unary minus, whitespace ignored, names [a-zA-Z][a-zA-Z0-9_']*.
QPoly parse_poly(std::string_view text, const VarsPtr& vars, const ParseOptions& opts = {});

/// Parses over Q and reduces mod p (denominators must be prime to p).
FpPoly parse_poly_mod(std::string_view text, const VarsPtr& vars, std::uint32_t p,
                      const ParseOptions& opts = {});

bool is_valid_variable_name(std::string_view name);

}  // namespace isbv
