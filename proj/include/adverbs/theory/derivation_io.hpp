#pragma once

#include <string>
#include <string_view>

#include "adverbs/term_io.hpp"
#include "adverbs/theory/derivation.hpp"

namespace adverbs::theory {

/// `(Rule (equiv|refine lhs rhs) [(count n)] premise...)`
std::string to_sexpr(const DerivationRef& d);
DerivationRef read_derivation(const SExpr& e, const ReadContext& ctx);
DerivationRef read_derivation(std::string_view text, const ReadContext& ctx);

Judgment read_judgment(const SExpr& e, const ReadContext& ctx);

}  // namespace adverbs::theory
