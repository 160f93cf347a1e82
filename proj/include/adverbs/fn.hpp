#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "adverbs/finite_type.hpp"

namespace adverbs {

class Fn;
using FnRef = std::shared_ptr<const Fn>;

/// A pure function between finite types: the shallowly embedded part of a
/// term. Table-backed functions are fully enumerated and can take part in
/// side conditions; opaque ones are only ever evaluated.
class Fn {
 public:
  using Body = std::function<Value(std::span<const Value>)>;

  /// Evaluates `body` on every tuple of the domain product and freezes the
  /// results. Throws TypeMismatch if an output falls outside the codomain.
  static FnRef tabulate(std::string name, std::vector<TypeRef> domain, TypeRef codomain,
                        const Body& body);
  static FnRef from_table(std::string name, std::vector<TypeRef> domain, TypeRef codomain,
                          std::vector<Value> table);
  static FnRef opaque(std::string name, std::vector<TypeRef> domain, TypeRef codomain, Body body);

  const std::string& name() const { return name_; }
  const std::vector<TypeRef>& domain() const { return domain_; }
  const TypeRef& codomain() const { return codomain_; }
  std::size_t arity() const { return domain_.size(); }
  bool is_table() const { return !opaque_; }
  const std::vector<Value>& table() const { return table_; }

  Value operator()(std::span<const Value> args) const;
  Value operator()(const Value& a) const { return (*this)(std::span<const Value>(&a, 1)); }
  Value operator()(const Value& a, const Value& b) const;

 private:
  Fn(std::string name, std::vector<TypeRef> domain, TypeRef codomain)
      : name_(std::move(name)), domain_(std::move(domain)), codomain_(std::move(codomain)) {}

  std::size_t table_index(std::span<const Value> args) const;

  std::string name_;
  std::vector<TypeRef> domain_;
  TypeRef codomain_;
  std::vector<Value> table_;
  Body opaque_;
};

/// Extensional equality for table functions, identity for opaque ones.
bool same_fn(const FnRef& a, const FnRef& b);

/// Calls `visit(tuple)` for every element of the product of `types`, in
/// canonical order. Stops early when `visit` returns false.
bool for_each_tuple(std::span<const TypeRef> types,
                    const std::function<bool(std::span<const Value>)>& visit);

namespace fns {

FnRef andb();
FnRef orb();
FnRef negb();
FnRef identity(const TypeRef& t);
/// fun x _ => x
FnRef first(const TypeRef& a, const TypeRef& b);
/// fun _ y => y
FnRef second(const TypeRef& a, const TypeRef& b);
FnRef pair(const TypeRef& a, const TypeRef& b);
FnRef inl(const TypeRef& left, const TypeRef& right);
FnRef inr(const TypeRef& left, const TypeRef& right);
/// Swaps the arguments of a binary function.
FnRef flip(const FnRef& f);
/// fun x => g (h x)
FnRef compose(const FnRef& g, const FnRef& h);
/// id : (A -> B) -> A -> B, uncurried.
FnRef apply(const TypeRef& fn_type);
/// flip id : A -> (A -> B) -> B, uncurried.
FnRef apply_flipped(const TypeRef& fn_type);

}  // namespace fns

}  // namespace adverbs
