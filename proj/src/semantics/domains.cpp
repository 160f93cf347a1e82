#include "adverbs/semantics/domains.hpp"

#include <algorithm>

namespace adverbs::sem {

namespace {

const Value& lookup(const Env& env, const EffectNode& e) {
  if (e.args.empty() || !e.args[0].is_symbol())
    throw Error(ErrorCode::TypeMismatch, e.sig->name() + "." + e.op + " needs a variable argument");
  auto it = env.find(e.args[0].as_symbol());
  if (it == env.end()) throw Error(ErrorCode::UnboundVar, e.args[0].as_symbol());
  return it->second;
}

}  // namespace

SemanticDomain<ReaderFn> reader_domain(const std::string& read_effect) {
  SemanticDomain<ReaderFn> d;
  auto& a = d.algebra;
  a.pure = [](const Term&, const Value& v) -> ReaderFn { return [v](const Env&) { return v; }; };
  a.fmap = [](const Term&, const FnRef& g, const ReaderFn& x) -> ReaderFn {
    return [g, x](const Env& env) { return (*g)(x(env)); };
  };
  a.lift_a2 = [](const Term&, const FnRef& f, const ReaderFn& x, const ReaderFn& y) -> ReaderFn {
    return [f, x, y](const Env& env) { return (*f)(x(env), y(env)); };
  };
  a.select_by = [](const Term&, const FnRef& f, const ReaderFn& x, const ReaderFn& y) -> ReaderFn {
    return [f, x, y](const Env& env) {
      Value c = (*f)(x(env));
      if (c.is_inr()) return c.payload();
      return apply_table(*f->codomain()->param(0), c.payload(), y(env));
    };
  };
  a.bind = [](const Term&, const ReaderFn& m, const Pointwise<ReaderFn>& k) -> ReaderFn {
    return [m, k](const Env& env) { return k(m(env))(env); };
  };
  a.effects[read_effect] = [](const Term&, const EffectNode& e) -> ReaderFn {
    EffectNode node = e;
    return [node](const Env& env) { return lookup(env, node); };
  };
  return d;
}

Value run_reader(const TermRef& t, const Env& env, const std::string& read_effect) {
  auto d = reader_domain(read_effect);
  return interpret(t, d)(env);
}

namespace update {

Algebra<UpdateFn> pure_case() {
  Algebra<UpdateFn> a;
  a.pure = [](const Term&, const Value& v) -> UpdateFn { return [v](const Env&) { return Costed{v, 0}; }; };
  return a;
}

Algebra<UpdateFn> fmap_case() {
  Algebra<UpdateFn> a;
  a.fmap = [](const Term&, const FnRef& g, const UpdateFn& x) -> UpdateFn {
    return [g, x](const Env& env) {
      auto r = x(env);
      return Costed{(*g)(r.value), r.cost};
    };
  };
  return a;
}

Algebra<UpdateFn> lift_a2_case() {
  Algebra<UpdateFn> a;
  a.lift_a2 = [](const Term&, const FnRef& f, const UpdateFn& x, const UpdateFn& y) -> UpdateFn {
    return [f, x, y](const Env& env) {
      auto l = x(env), r = y(env);
      return Costed{(*f)(l.value, r.value), std::max(l.cost, r.cost)};
    };
  };
  return a;
}

Algebra<UpdateFn> sequential_lift_a2_case() {
  Algebra<UpdateFn> a;
  a.lift_a2 = [](const Term&, const FnRef& f, const UpdateFn& x, const UpdateFn& y) -> UpdateFn {
    return [f, x, y](const Env& env) {
      auto l = x(env), r = y(env);
      return Costed{(*f)(l.value, r.value), l.cost + r.cost};
    };
  };
  return a;
}

Algebra<UpdateFn> bind_case() {
  Algebra<UpdateFn> a;
  a.bind = [](const Term&, const UpdateFn& m, const Pointwise<UpdateFn>& k) -> UpdateFn {
    return [m, k](const Env& env) {
      auto r = m(env);
      auto n = k(r.value)(env);
      return Costed{n.value, r.cost + n.cost};
    };
  };
  return a;
}

Algebra<UpdateFn>::EffectCase read_case(std::uint64_t cost) {
  return [cost](const Term&, const EffectNode& e) -> UpdateFn {
    EffectNode node = e;
    return [node, cost](const Env& env) { return Costed{lookup(env, node), cost}; };
  };
}

}  // namespace update

SemanticDomain<UpdateFn> update_domain(const std::string& read_effect) {
  SemanticDomain<UpdateFn> d;
  d.algebra.pure = update::pure_case().pure;
  d.algebra.fmap = update::fmap_case().fmap;
  d.algebra.lift_a2 = update::lift_a2_case().lift_a2;
  d.algebra.bind = update::bind_case().bind;
  d.algebra.effects[read_effect] = update::read_case();
  return d;
}

}  // namespace adverbs::sem
