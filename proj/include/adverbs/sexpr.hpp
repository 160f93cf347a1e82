#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "adverbs/value.hpp"

namespace adverbs {

/// A parsed s-expression: an atom or a parenthesized list.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t position = 0;  // byte offset in the source

  bool is_list() const { return !is_atom; }
  bool head_is(std::string_view name) const {
    return is_list() && !items.empty() && items[0].is_atom && items[0].atom == name;
  }
  std::string to_string() const;
};

/// Parses exactly one s-expression. `;` starts a comment running to end of
/// line. Throws SyntaxError with the offending byte offset.
SExpr parse_sexpr(std::string_view text);
/// Parses a sequence of s-expressions.
std::vector<SExpr> parse_sexprs(std::string_view text);

/// Reads the value syntax produced by Value::to_string.
Value read_value(const SExpr& e);

}  // namespace adverbs
