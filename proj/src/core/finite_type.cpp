#include "adverbs/finite_type.hpp"

#include <set>

#include "adverbs/error.hpp"

namespace adverbs {

namespace {
constexpr std::size_t kMaxCarrier = 1u << 20;

void check_size(double n, const std::string& name) {
  if (n > static_cast<double>(kMaxCarrier))
    throw Error(ErrorCode::InvalidArgument, "carrier of " + name + " is too large");
}
}  // namespace

FiniteType::FiniteType(std::string name, std::vector<Value> carrier, Shape shape,
                       std::vector<TypeRef> params)
    : name_(std::move(name)), carrier_(std::move(carrier)), shape_(shape), params_(std::move(params)) {
  if (carrier_.empty()) throw Error(ErrorCode::InvalidArgument, "empty carrier for " + name_);
  for (std::size_t i = 0; i < carrier_.size(); ++i) {
    if (!index_.emplace(carrier_[i], i).second)
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate value " + carrier_[i].to_string() + " in " + name_);
  }
}

TypeRef FiniteType::make(std::string name, std::vector<Value> carrier) {
  return TypeRef(new FiniteType(std::move(name), std::move(carrier), Shape::Plain, {}));
}

TypeRef FiniteType::either(const TypeRef& left, const TypeRef& right) {
  std::vector<Value> c;
  for (const auto& v : left->carrier()) c.push_back(Value::inl(v));
  for (const auto& v : right->carrier()) c.push_back(Value::inr(v));
  return TypeRef(new FiniteType("Either(" + left->name() + "," + right->name() + ")", std::move(c),
                                Shape::Either, {left, right}));
}

TypeRef FiniteType::pair(const TypeRef& first, const TypeRef& second) {
  std::string name = "Pair(" + first->name() + "," + second->name() + ")";
  check_size(double(first->size()) * double(second->size()), name);
  std::vector<Value> c;
  for (const auto& a : first->carrier())
    for (const auto& b : second->carrier()) c.push_back(Value::pair(a, b));
  return TypeRef(new FiniteType(std::move(name), std::move(c), Shape::Pair, {first, second}));
}

TypeRef FiniteType::function(const TypeRef& domain, const TypeRef& codomain) {
  std::string name = "(" + domain->name() + "->" + codomain->name() + ")";
  double n = 1;
  for (std::size_t i = 0; i < domain->size(); ++i) {
    n *= double(codomain->size());
    check_size(n, name);
  }
  // Mixed-radix enumeration, first domain element most significant.
  const auto total = static_cast<std::size_t>(n);
  const std::size_t base = codomain->size();
  std::vector<Value> c;
  c.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    List row(domain->size());
    std::size_t rest = code;
    for (std::size_t i = domain->size(); i-- > 0;) {
      row[i] = codomain->carrier()[rest % base];
      rest /= base;
    }
    c.push_back(Value::list(std::move(row)));
  }
  return TypeRef(new FiniteType(std::move(name), std::move(c), Shape::Function, {domain, codomain}));
}

TypeRef FiniteType::list_of(const TypeRef& element, std::size_t max_length) {
  std::string name = "List" + std::to_string(max_length) + "(" + element->name() + ")";
  std::vector<Value> c{Value::list({})};
  std::vector<List> layer{List{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<List> next;
    for (const auto& prefix : layer) {
      for (const auto& e : element->carrier()) {
        List l = prefix;
        l.push_back(e);
        next.push_back(std::move(l));
      }
    }
    check_size(double(c.size() + next.size()), name);
    for (const auto& l : next) c.push_back(Value::list(l));
    layer = std::move(next);
  }
  return TypeRef(new FiniteType(std::move(name), std::move(c), Shape::List, {element}));
}

TypeRef FiniteType::union_of(std::string name, const std::vector<TypeRef>& members) {
  std::vector<Value> c;
  std::set<Value> seen;
  for (const auto& m : members)
    for (const auto& v : m->carrier())
      if (seen.insert(v).second) c.push_back(v);
  return TypeRef(new FiniteType(std::move(name), std::move(c), Shape::Union, members));
}

std::optional<std::size_t> FiniteType::index_of(const Value& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool same_type(const TypeRef& a, const TypeRef& b) { return a == b || (a && b && *a == *b); }

TypeRef unit_type() {
  static const TypeRef t = FiniteType::make("unit", {Value::unit()});
  return t;
}

TypeRef bool_type() {
  static const TypeRef t = FiniteType::make("bool", {Value::boolean(false), Value::boolean(true)});
  return t;
}

TypeRef nat_type(std::uint64_t max_value) {
  static const TypeRef dflt = [] {
    std::vector<Value> c;
    for (std::uint64_t i = 0; i <= 7; ++i) c.push_back(Value::nat(i));
    return FiniteType::make("nat7", std::move(c));
  }();
  if (max_value == 7) return dflt;
  std::vector<Value> c;
  for (std::uint64_t i = 0; i <= max_value; ++i) c.push_back(Value::nat(i));
  return FiniteType::make("nat" + std::to_string(max_value), std::move(c));
}

TypeRef enum_type(std::string name, const std::vector<std::string>& tags) {
  std::vector<Value> c;
  for (const auto& t : tags) c.push_back(Value::symbol(t));
  return FiniteType::make(std::move(name), std::move(c));
}

Value apply_table(const FiniteType& fn_type, const Value& table, const Value& arg) {
  if (fn_type.shape() != FiniteType::Shape::Function)
    throw Error(ErrorCode::TypeMismatch, fn_type.name() + " is not a function type");
  auto i = fn_type.param(0)->index_of(arg);
  if (!i) throw Error(ErrorCode::TypeMismatch, arg.to_string() + " outside " + fn_type.param(0)->name());
  return table.as_list().at(*i);
}

}  // namespace adverbs
