#include "adverbs/theory/derivation_io.hpp"

#include <charconv>

namespace adverbs::theory {

std::string to_sexpr(const DerivationRef& d) {
  const auto& j = d->conclusion;
  std::string out = "(" + std::string(to_string(d->rule)) + " (" + std::string(to_string(j.rel)) + " " +
                    adverbs::to_sexpr(j.lhs) + " " + adverbs::to_sexpr(j.rhs) + ")";
  if (d->rule == RuleId::Repeat) out += " (count " + std::to_string(d->count) + ")";
  for (const auto& p : d->premises) out += " " + to_sexpr(p);
  return out + ")";
}

Judgment read_judgment(const SExpr& e, const ReadContext& ctx) {
  if (!e.is_list() || e.items.size() != 3 || !e.items[0].is_atom)
    throw SyntaxError(e.position, "judgment must be (equiv l r) or (refine l r)");
  Relation rel;
  if (e.items[0].atom == "equiv") rel = Relation::Equiv;
  else if (e.items[0].atom == "refine") rel = Relation::Refine;
  else throw SyntaxError(e.position, "unknown relation " + e.items[0].atom);
  return Judgment{rel, read_term(e.items[1], ctx), read_term(e.items[2], ctx)};
}

DerivationRef read_derivation(const SExpr& e, const ReadContext& ctx) {
  if (!e.is_list() || e.items.size() < 2 || !e.items[0].is_atom)
    throw SyntaxError(e.position, "derivation must be (Rule judgment premise...)");
  auto rule = rule_from_string(e.items[0].atom);
  if (!rule) throw SyntaxError(e.items[0].position, "unknown rule " + e.items[0].atom);
  auto j = read_judgment(e.items[1], ctx);
  std::uint64_t count = 0;
  std::vector<DerivationRef> premises;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const auto& p = e.items[i];
    if (p.head_is("count") && p.items.size() == 2 && p.items[1].is_atom) {
      const auto& a = p.items[1].atom;
      auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), count);
      if (ec != std::errc() || ptr != a.data() + a.size()) throw SyntaxError(p.position, "bad count");
      continue;
    }
    premises.push_back(read_derivation(p, ctx));
  }
  return Derivation::make(*rule, std::move(j), std::move(premises), count);
}

DerivationRef read_derivation(std::string_view text, const ReadContext& ctx) {
  return read_derivation(parse_sexpr(text), ctx);
}

}  // namespace adverbs::theory
