#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "adverbs/finite_type.hpp"
#include "adverbs/fn.hpp"
#include "adverbs/vocabulary.hpp"

namespace adverbs {

class Term;
using TermRef = std::shared_ptr<const Term>;

/// The continuation of a Bind node.
///
/// Normally a total table: one term per element of the scrutinee's carrier.
/// The opaque form exists for interpreters that only ever evaluate it; the
/// derivation checker rejects it.
class Continuation {
 public:
  using Body = std::function<TermRef(const Value&)>;

  /// Tabulates `k` over the carrier of `domain`. Entries produced for equal
  /// inputs by a memoizing builder are stored once per pointer.
  static Continuation tabulate(const TypeRef& domain, const Body& k);
  static Continuation from_table(TypeRef domain, std::vector<TermRef> entries);
  static Continuation constant(const TypeRef& domain, const TermRef& t);
  static Continuation opaque(TypeRef domain, TypeRef result, Body k);

  bool is_table() const { return !opaque_; }
  const TypeRef& domain() const { return domain_; }
  const TypeRef& result_type() const { return result_; }
  const std::vector<TermRef>& entries() const { return entries_; }
  /// True when every table entry is the same term.
  bool is_constant() const;

  TermRef operator()(const Value& v) const;

 private:
  TypeRef domain_;
  TypeRef result_;
  std::vector<TermRef> entries_;
  Body opaque_;
};

struct PureNode {
  Value value;
};
struct FMapNode {
  FnRef g;
  TermRef a;
};
struct LiftA2Node {
  FnRef f;
  TermRef a, b;
};
/// f : X -> Either(Y -> R, R); a : X; b : Y.
struct SelectByNode {
  FnRef f;
  TermRef a, b;
};
struct BindNode {
  TermRef m;
  Continuation k;
};
struct KPlusNode {
  TermRef a;
};
struct PlusNode {
  TermRef a, b;
};
struct EffectNode {
  EffectRef sig;
  std::string op;
  std::vector<Value> args;
};

/// One node of a mixed embedding. Immutable; children are shared.
class Term {
 public:
  using Payload =
      std::variant<PureNode, FMapNode, LiftA2Node, SelectByNode, BindNode, KPlusNode, PlusNode, EffectNode>;

  Term(TypeRef type, Payload payload);

  KindTag tag() const { return static_cast<KindTag>(payload_.index()); }
  NodeKind kind() const;
  const TypeRef& type() const { return type_; }
  const Payload& payload() const { return payload_; }
  std::size_t hash() const { return hash_; }

  template <class N>
  const N* as() const {
    return std::get_if<N>(&payload_);
  }
  template <class N>
  const N& get() const {
    return std::get<N>(payload_);
  }

  /// Direct subterms, excluding Bind continuation entries.
  std::vector<TermRef> children() const;

 private:
  TypeRef type_;
  Payload payload_;
  std::size_t hash_;
};

/// Structural equality: same kinds, types, functions (extensionally for
/// tables), values and children. Shared subterms are compared once.
bool term_equal(const TermRef& a, const TermRef& b);

struct TermRefHash {
  std::size_t operator()(const TermRef& t) const { return t->hash(); }
};
struct TermRefEq {
  bool operator()(const TermRef& a, const TermRef& b) const { return term_equal(a, b); }
};

/// Every kind occurring in `t`, including inside continuations.
std::vector<NodeKind> kinds_of(const TermRef& t);

/// Smart constructors. Each checks that the kind is enabled in the builder's
/// vocabulary and that child types line up with function domains. Nothing is
/// ever normalized: children are stored exactly as given.
class TermBuilder {
 public:
  explicit TermBuilder(Vocabulary vocab) : vocab_(std::move(vocab)) {}

  const Vocabulary& vocabulary() const { return vocab_; }

  /// `type` may be omitted for unit, boolean and natural literals.
  TermRef pure(const Value& v, TypeRef type = nullptr) const;
  TermRef fmap(const FnRef& g, const TermRef& a) const;
  TermRef lift_a2(const FnRef& f, const TermRef& a, const TermRef& b) const;
  TermRef select_by(const FnRef& f, const TermRef& a, const TermRef& b) const;
  TermRef bind(const TermRef& m, Continuation k) const;
  TermRef bind(const TermRef& m, const Continuation::Body& k) const;
  TermRef kplus(const TermRef& a) const;
  TermRef plus(const TermRef& a, const TermRef& b) const;
  TermRef effect(const std::string& sig, const std::string& op, std::vector<Value> args) const;

  /// `select a b` for a : Either(A, B) and b : A -> B, encoded as SelectBy
  /// with the dispatcher inl x => inl (fun y => y x), inr x => inr x.
  TermRef select(const TermRef& a, const TermRef& b) const;

 private:
  void require(KindTag tag) const;
  Vocabulary vocab_;
};

/// The dispatcher Fn used by `select` for a : Either(A, B).
FnRef select_dispatcher(const TypeRef& either_type);

/// A value type fits a declared domain if it is the same type or its
/// carrier is contained in the domain's.
bool fits(const TypeRef& actual, const TypeRef& declared);

}  // namespace adverbs
