#include "adverbs/fn.hpp"

#include "adverbs/error.hpp"

namespace adverbs {

bool for_each_tuple(std::span<const TypeRef> types,
                    const std::function<bool(std::span<const Value>)>& visit) {
  std::vector<std::size_t> digits(types.size(), 0);
  std::vector<Value> tuple;
  for (const auto& t : types) tuple.push_back(t->carrier().front());
  while (true) {
    if (!visit(tuple)) return false;
    std::size_t i = types.size();
    while (i > 0) {
      --i;
      if (++digits[i] < types[i]->size()) {
        tuple[i] = types[i]->carrier()[digits[i]];
        break;
      }
      digits[i] = 0;
      tuple[i] = types[i]->carrier().front();
      if (i == 0) return true;
    }
    if (types.empty()) return true;
  }
}

FnRef Fn::tabulate(std::string name, std::vector<TypeRef> domain, TypeRef codomain,
                   const Body& body) {
  std::vector<Value> table;
  for_each_tuple(domain, [&](std::span<const Value> args) {
    Value out = body(args);
    if (!codomain->contains(out))
      throw Error(ErrorCode::TypeMismatch,
                  name + " produced " + out.to_string() + " outside " + codomain->name());
    table.push_back(std::move(out));
    return true;
  });
  return from_table(std::move(name), std::move(domain), std::move(codomain), std::move(table));
}

FnRef Fn::from_table(std::string name, std::vector<TypeRef> domain, TypeRef codomain,
                     std::vector<Value> table) {
  std::size_t expected = 1;
  for (const auto& t : domain) expected *= t->size();
  if (table.size() != expected)
    throw Error(ErrorCode::TypeMismatch, name + ": table does not cover the domain exactly once");
  for (const auto& v : table)
    if (!codomain->contains(v))
      throw Error(ErrorCode::TypeMismatch, name + ": table value outside codomain");
  auto fn = std::shared_ptr<Fn>(new Fn(std::move(name), std::move(domain), std::move(codomain)));
  fn->table_ = std::move(table);
  return fn;
}

FnRef Fn::opaque(std::string name, std::vector<TypeRef> domain, TypeRef codomain, Body body) {
  auto fn = std::shared_ptr<Fn>(new Fn(std::move(name), std::move(domain), std::move(codomain)));
  fn->opaque_ = std::move(body);
  return fn;
}

std::size_t Fn::table_index(std::span<const Value> args) const {
  if (args.size() != domain_.size())
    throw Error(ErrorCode::TypeMismatch, name_ + ": wrong number of arguments");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto pos = domain_[i]->index_of(args[i]);
    if (!pos)
      throw Error(ErrorCode::TypeMismatch,
                  name_ + ": argument " + args[i].to_string() + " outside " + domain_[i]->name());
    idx = idx * domain_[i]->size() + *pos;
  }
  return idx;
}

Value Fn::operator()(std::span<const Value> args) const {
  if (opaque_) {
    if (args.size() != domain_.size())
      throw Error(ErrorCode::TypeMismatch, name_ + ": wrong number of arguments");
    return opaque_(args);
  }
  return table_[table_index(args)];
}

Value Fn::operator()(const Value& a, const Value& b) const {
  const Value args[] = {a, b};
  return (*this)(std::span<const Value>(args));
}

bool same_fn(const FnRef& a, const FnRef& b) {
  if (a == b) return true;
  if (!a || !b || !a->is_table() || !b->is_table()) return false;
  if (a->arity() != b->arity() || !same_type(a->codomain(), b->codomain())) return false;
  for (std::size_t i = 0; i < a->arity(); ++i)
    if (!same_type(a->domain()[i], b->domain()[i])) return false;
  return a->table() == b->table();
}

namespace fns {

FnRef andb() {
  static const FnRef f = Fn::tabulate("andb", {bool_type(), bool_type()}, bool_type(),
                                      [](auto a) { return Value::boolean(a[0].as_bool() && a[1].as_bool()); });
  return f;
}

FnRef orb() {
  static const FnRef f = Fn::tabulate("orb", {bool_type(), bool_type()}, bool_type(),
                                      [](auto a) { return Value::boolean(a[0].as_bool() || a[1].as_bool()); });
  return f;
}

FnRef negb() {
  static const FnRef f = Fn::tabulate("negb", {bool_type()}, bool_type(),
                                      [](auto a) { return Value::boolean(!a[0].as_bool()); });
  return f;
}

FnRef identity(const TypeRef& t) {
  return Fn::tabulate("id", {t}, t, [](auto a) { return a[0]; });
}

FnRef first(const TypeRef& a, const TypeRef& b) {
  return Fn::tabulate("first", {a, b}, a, [](auto x) { return x[0]; });
}

FnRef second(const TypeRef& a, const TypeRef& b) {
  return Fn::tabulate("second", {a, b}, b, [](auto x) { return x[1]; });
}

FnRef pair(const TypeRef& a, const TypeRef& b) {
  return Fn::tabulate("pair", {a, b}, FiniteType::pair(a, b),
                      [](auto x) { return Value::pair(x[0], x[1]); });
}

FnRef inl(const TypeRef& left, const TypeRef& right) {
  return Fn::tabulate("inl", {left}, FiniteType::either(left, right),
                      [](auto x) { return Value::inl(x[0]); });
}

FnRef inr(const TypeRef& left, const TypeRef& right) {
  return Fn::tabulate("inr", {right}, FiniteType::either(left, right),
                      [](auto x) { return Value::inr(x[0]); });
}

FnRef flip(const FnRef& f) {
  if (f->arity() != 2) throw Error(ErrorCode::TypeMismatch, "flip needs a binary function");
  std::string name = f->name().rfind("(flip ", 0) == 0
                         ? f->name().substr(6, f->name().size() - 7)
                         : "(flip " + f->name() + ")";
  auto body = [f](std::span<const Value> x) { return (*f)(x[1], x[0]); };
  if (!f->is_table()) return Fn::opaque(name, {f->domain()[1], f->domain()[0]}, f->codomain(), body);
  return Fn::tabulate(name, {f->domain()[1], f->domain()[0]}, f->codomain(), body);
}

FnRef compose(const FnRef& g, const FnRef& h) {
  if (g->arity() != 1 || h->arity() != 1 || !same_type(h->codomain(), g->domain()[0]))
    throw Error(ErrorCode::TypeMismatch, "cannot compose " + g->name() + " with " + h->name());
  return Fn::tabulate("(compose " + g->name() + " " + h->name() + ")", h->domain(), g->codomain(),
                      [&](std::span<const Value> x) { return (*g)((*h)(x)); });
}

FnRef apply(const TypeRef& fn_type) {
  const FiniteType& ft = *fn_type;
  return Fn::tabulate("apply", {fn_type, ft.param(0)}, ft.param(1),
                      [fn_type](auto x) { return apply_table(*fn_type, x[0], x[1]); });
}

FnRef apply_flipped(const TypeRef& fn_type) {
  const FiniteType& ft = *fn_type;
  return Fn::tabulate("(flip apply)", {ft.param(0), fn_type}, ft.param(1),
                      [fn_type](auto x) { return apply_table(*fn_type, x[1], x[0]); });
}

}  // namespace fns

}  // namespace adverbs
