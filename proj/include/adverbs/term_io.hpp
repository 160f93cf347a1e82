#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "adverbs/sexpr.hpp"
#include "adverbs/term.hpp"

namespace adverbs {

/// Resolves function names in term text. Builders receive the result types
/// of the children the function is applied to, so polymorphic names like
/// `second` or `apply` can be instantiated at the right types.
class FnRegistry {
 public:
  using Builder = std::function<FnRef(std::span<const TypeRef> arg_types)>;

  /// andb, orb, negb, id, first, second, pair, apply.
  static FnRegistry standard();

  void add(const std::string& name, Builder b) { builders_[name] = std::move(b); }
  void add(const FnRef& f);

  /// Accepts a name, `(flip f)` or `(compose g h)`.
  FnRef resolve(const SExpr& e, std::span<const TypeRef> arg_types) const;

 private:
  std::map<std::string, Builder> builders_;
};

struct ReadContext {
  TermBuilder builder;
  FnRegistry fns = FnRegistry::standard();
  /// Extra named types for `(pure v T)` literals.
  std::map<std::string, TypeRef> types;
};

/// Canonical text: one parenthesized group per node, e.g.
/// `(liftA2 andb (effect DataEff GetData x) (pure true))`.
std::string to_sexpr(const TermRef& t);

TermRef read_term(const SExpr& e, const ReadContext& ctx);
TermRef read_term(std::string_view text, const ReadContext& ctx);

}  // namespace adverbs
