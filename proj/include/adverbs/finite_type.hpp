#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adverbs/value.hpp"

namespace adverbs {

class FiniteType;
using TypeRef = std::shared_ptr<const FiniteType>;

/// A named, finite, canonically ordered set of values.
///
/// Every type parameter in a term (the X/Y/R of each node) is one of these,
/// which is what makes side conditions decidable by enumeration.
class FiniteType {
 public:
  enum class Shape { Plain, Either, Pair, Function, List, Union };

  static TypeRef make(std::string name, std::vector<Value> carrier);

  static TypeRef either(const TypeRef& left, const TypeRef& right);
  static TypeRef pair(const TypeRef& first, const TypeRef& second);
  /// All total functions `domain -> codomain`, as output tables.
  static TypeRef function(const TypeRef& domain, const TypeRef& codomain);
  /// Lists over `element` of length at most `max_length`.
  static TypeRef list_of(const TypeRef& element, std::size_t max_length);
  static TypeRef union_of(std::string name, const std::vector<TypeRef>& members);

  const std::string& name() const { return name_; }
  const std::vector<Value>& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  bool contains(const Value& v) const { return index_.count(v) != 0; }
  std::optional<std::size_t> index_of(const Value& v) const;

  Shape shape() const { return shape_; }
  /// Component types: (left, right) for Either, (fst, snd) for Pair,
  /// (domain, codomain) for Function, (element) for List, members for Union.
  const std::vector<TypeRef>& params() const { return params_; }
  const TypeRef& param(std::size_t i) const { return params_.at(i); }

  friend bool operator==(const FiniteType& a, const FiniteType& b) {
    return a.name_ == b.name_ && a.carrier_ == b.carrier_;
  }

 private:
  FiniteType(std::string name, std::vector<Value> carrier, Shape shape,
             std::vector<TypeRef> params);

  std::string name_;
  std::vector<Value> carrier_;
  std::map<Value, std::size_t> index_;
  Shape shape_;
  std::vector<TypeRef> params_;
};

bool same_type(const TypeRef& a, const TypeRef& b);

TypeRef unit_type();
TypeRef bool_type();
/// Bounded naturals 0..max_value; terms default to 0..7.
TypeRef nat_type(std::uint64_t max_value = 7);
TypeRef enum_type(std::string name, const std::vector<std::string>& tags);

/// Applies a function-table value of type `fn_type` to `arg`.
Value apply_table(const FiniteType& fn_type, const Value& table, const Value& arg);
/// Builds the table value of `f` over the domain of `fn_type`.
template <class F>
Value tabulate(const FiniteType& fn_type, F&& f) {
  List out;
  for (const auto& x : fn_type.param(0)->carrier()) out.push_back(f(x));
  return Value::list(std::move(out));
}

}  // namespace adverbs
