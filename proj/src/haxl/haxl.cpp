#include "adverbs/haxl/haxl.hpp"

#include <algorithm>

#include "adverbs/error.hpp"

namespace adverbs::haxl {

Instance cost_pure() {
  Instance i{"CostPure", {}};
  i.cases.pure = [](const Term&, const Value& v) -> CostFn { return [v](const Db&) { return CostReport{v, 0, 0}; }; };
  return i;
}

Instance cost_app() {
  Instance i{"CostApp", {}};
  i.cases.lift_a2 = [](const Term&, const FnRef& f, const CostFn& a, const CostFn& b) -> CostFn {
    return [f, a, b](const Db& db) {
      auto x = a(db);
      auto y = b(db);
      return CostReport{(*f)(x.result, y.result), std::max(x.rounds, y.rounds), x.requests + y.requests};
    };
  };
  return i;
}

Instance cost_app_sequential() {
  Instance i{"CostAppSequential", {}};
  i.cases.lift_a2 = [](const Term&, const FnRef& f, const CostFn& a, const CostFn& b) -> CostFn {
    return [f, a, b](const Db& db) {
      auto x = a(db);
      auto y = b(db);
      return CostReport{(*f)(x.result, y.result), x.rounds + y.rounds, x.requests + y.requests};
    };
  };
  return i;
}

Instance cost_monad() {
  Instance i{"CostMonad", {}};
  i.cases.bind = [](const Term&, const CostFn& m, const Pointwise<CostFn>& k) -> CostFn {
    return [m, k](const Db& db) {
      auto x = m(db);
      auto y = k(x.result)(db);
      return CostReport{y.result, x.rounds + y.rounds, x.requests + y.requests};
    };
  };
  return i;
}

Instance cost_data() {
  Instance i{"CostData", {}};
  i.cases.effect = [](const Term&, const EffectNode& e) -> CostFn {
    if (e.args.empty() || !e.args[0].is_symbol())
      throw Error(ErrorCode::TypeMismatch, e.sig->name() + "." + e.op + " needs a key");
    std::string key = e.args[0].as_symbol();
    return [key](const Db& db) {
      auto it = db.find(key);
      if (it == db.end()) throw Error(ErrorCode::UnboundVar, key);
      return CostReport{it->second, 1, 1};
    };
  };
  return i;
}

Instance constant_cost_effect(const std::string& sig, std::uint64_t cost) {
  Instance i{"Cost" + sig, {}};
  i.cases.effect = [cost](const Term& t, const EffectNode&) -> CostFn {
    Value r = t.type()->contains(Value::unit()) ? Value::unit() : t.type()->carrier().at(0);
    return [r, cost](const Db&) { return CostReport{r, cost, cost}; };
  };
  return i;
}

EffectRef data_effect(const std::vector<std::string>& keys, const TypeRef& values) {
  return EffectSig::make("DataEff", {OpSig{"GetData", {enum_type("var", keys)}, values, {}}});
}

Analyzer Analyzer::standard(const EffectRef& data) {
  Analyzer a;
  a.vocab_ = Vocabulary({KindTag::Pure, KindTag::LiftA2, KindTag::Bind}, {data});
  a.table_[NodeKind::of(KindTag::Pure)] = std::make_shared<const Instance>(cost_pure());
  a.table_[NodeKind::of(KindTag::LiftA2)] = std::make_shared<const Instance>(cost_app());
  a.table_[NodeKind::of(KindTag::Bind)] = std::make_shared<const Instance>(cost_monad());
  a.table_[NodeKind::effect_kind(data->name())] = std::make_shared<const Instance>(cost_data());
  return a;
}

Analyzer Analyzer::extend_with_effect(const EffectRef& sig, Instance inst) const {
  if (vocab_.effect(sig->name())) throw Error(ErrorCode::DuplicateEffectName, sig->name());
  Analyzer a = *this;
  a.vocab_.add_effect(sig);
  a.table_[NodeKind::effect_kind(sig->name())] = std::make_shared<const Instance>(std::move(inst));
  return a;
}

Analyzer Analyzer::sequentialized() const {
  Analyzer a = *this;
  a.table_[NodeKind::of(KindTag::LiftA2)] = std::make_shared<const Instance>(cost_app_sequential());
  return a;
}

CostAlgebra Analyzer::assemble() const {
  // The sum of the instances: each kind is dispatched to its own instance.
  CostAlgebra alg;
  for (const auto& [kind, inst] : table_) {
    const auto& c = inst->cases;
    switch (kind.tag) {
      case KindTag::Pure: alg.pure = c.pure; break;
      case KindTag::FMap: alg.fmap = c.fmap; break;
      case KindTag::LiftA2: alg.lift_a2 = c.lift_a2; break;
      case KindTag::SelectBy: alg.select_by = c.select_by; break;
      case KindTag::Bind: alg.bind = c.bind; break;
      case KindTag::KPlus: alg.kplus = c.kplus; break;
      case KindTag::Plus: alg.plus = c.plus; break;
      case KindTag::Effect: alg.effects[kind.effect] = c.effect; break;
    }
  }
  return alg;
}

CostReport Analyzer::analyze(const TermRef& program, const Db& db) const {
  return fold(program, assemble())(db);
}

std::vector<Fixture> fixtures(const TermBuilder& b) {
  auto get = [&](const char* k) { return b.effect("DataEff", "GetData", {Value::symbol(k)}); };
  auto x = get("x");
  const auto& vals = x->type();
  return {
      {"sequential", b.bind(x, Continuation::constant(vals, get("y"))), 2},
      {"batched", b.lift_a2(fns::pair(vals, vals), x, get("y")), 1},
      {"pure", b.pure(Value::nat(0)), 0},
  };
}

}  // namespace adverbs::haxl
