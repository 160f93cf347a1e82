#include <functional>
#include <unordered_set>

#include "adverbs/theory/derivation.hpp"

namespace adverbs::theory {

DerivationRef Derivation::make(RuleId rule, Judgment j, std::vector<DerivationRef> premises, std::uint64_t count) {
  return std::make_shared<const Derivation>(Derivation{rule, std::move(j), std::move(premises), count});
}

namespace {

using Pred = std::function<bool(std::span<const Value>)>;

/// Rejections are thrown internally and turned into a Verdict at the top.
struct Reject {
  ErrorCode code;
  std::string why;
};

[[noreturn]] void fail(ErrorCode c, std::string why) { throw Reject{c, std::move(why)}; }
[[noreturn]] void shape(const std::string& why) { fail(ErrorCode::SideConditionFails, "shape: " + why); }

void need(bool ok, const std::string& why) {
  if (!ok) shape(why);
}

void table(const FnRef& f) {
  if (!f->is_table()) fail(ErrorCode::OpaqueFunctionInSideCondition, f->name());
}

void table(const Continuation& k) {
  if (!k.is_table()) fail(ErrorCode::OpaqueFunctionInSideCondition, "opaque continuation");
}

bool eq(const TermRef& a, const TermRef& b) { return term_equal(a, b); }

template <class N>
const N& as(const TermRef& t, const char* what) {
  const N* n = t->as<N>();
  if (!n) shape(std::string("expected ") + what + ", found " + t->kind().to_string());
  return *n;
}

/// ∀ tuple in the product of `types`, pred(tuple).
void forall(const std::vector<TypeRef>& types, const Pred& pred, const std::string& law) {
  std::string witness;
  bool ok = for_each_tuple(types, [&](std::span<const Value> xs) {
    if (pred(xs)) return true;
    for (const auto& x : xs) witness += (witness.empty() ? "" : ", ") + x.to_string();
    return false;
  });
  if (!ok) fail(ErrorCode::SideConditionFails, law + " fails at (" + witness + ")");
}

bool is_second(const FnRef& f) {
  table(f);
  bool ok = f->arity() == 2;
  if (ok)
    for_each_tuple(f->domain(), [&](std::span<const Value> xs) { return ok = (*f)(xs) == xs[1]; });
  return ok;
}

bool is_repeat(const TermRef& t, const TermRef& a, std::uint64_t n) {
  if (n == 0) return eq(t, a);
  if (const auto* l = t->as<LiftA2Node>())
    return eq(l->a, a) && is_second(l->f) && is_repeat(l->b, a, n - 1);
  if (const auto* b = t->as<BindNode>()) {
    if (!eq(b->m, a)) return false;
    table(b->k);
    if (!b->k.is_constant()) return false;
    return is_repeat(b->k.entries().front(), a, n - 1);
  }
  return false;
}

class StepCheck {
 public:
  StepCheck(const Theory& th, const Derivation& d)
      : th_(th), d_(d), rel_(d.conclusion.rel), lhs_(d.conclusion.lhs), rhs_(d.conclusion.rhs) {}

  void run() {
    if (!th_.has(d_.rule))
      fail(ErrorCode::RuleNotInTheory, std::string(to_string(d_.rule)) + " is not in " + th_.name());
    if (!th_.has(rel_)) fail(ErrorCode::RuleNotInTheory, "refinement is not available in " + th_.name());
    if (!same_type(lhs_->type(), rhs_->type())) fail(ErrorCode::TypeMismatch, "sides have different types");
    switch (d_.rule) {
      case RuleId::Refl:
        premises(0);
        need(eq(lhs_, rhs_), "sides differ");
        return;
      case RuleId::Sym:
        equiv_only();
        premises(1);
        premise(0, Relation::Equiv, rhs_, lhs_);
        return;
      case RuleId::Trans: {
        premises(2);
        const auto& p = d_.premises[0]->conclusion;
        const auto& q = d_.premises[1]->conclusion;
        need(p.rel == rel_ && q.rel == rel_, "premise relations");
        need(eq(p.lhs, lhs_) && eq(q.rhs, rhs_) && eq(p.rhs, q.lhs), "premises do not chain");
        return;
      }
      case RuleId::CongFMap: return cong_fmap();
      case RuleId::CongLiftA2: return cong2<LiftA2Node>(KindTag::LiftA2);
      case RuleId::CongSelectBy: return cong2<SelectByNode>(KindTag::SelectBy);
      case RuleId::CongBind: return cong_bind();
      case RuleId::CongKPlus: {
        premises(1);
        premise(0, rel_, as<KPlusNode>(lhs_, "KPlus").a, as<KPlusNode>(rhs_, "KPlus").a);
        return;
      }
      case RuleId::CongPlus: {
        premises(2);
        const auto& l = as<PlusNode>(lhs_, "Plus");
        const auto& r = as<PlusNode>(rhs_, "Plus");
        premise(0, rel_, l.a, r.a);
        premise(1, rel_, l.b, r.b);
        return;
      }
      case RuleId::AppLeftId: {
        axiom();
        const auto& l = as<LiftA2Node>(lhs_, "LiftA2");
        const Value& a = as<PureNode>(l.a, "Pure").value;
        need(eq(l.b, rhs_), "right side is not the second operand");
        table(l.f);
        forall({l.b->type()}, [&](auto ys) { return (*l.f)(a, ys[0]) == ys[0]; }, "f a y = y");
        return;
      }
      case RuleId::AppRightId: {
        axiom();
        const auto& l = as<LiftA2Node>(lhs_, "LiftA2");
        const Value& b = as<PureNode>(l.b, "Pure").value;
        need(eq(l.a, rhs_), "right side is not the first operand");
        table(l.f);
        forall({l.a->type()}, [&](auto xs) { return (*l.f)(xs[0], b) == xs[0]; }, "f x b = x");
        return;
      }
      case RuleId::AppAssoc: return app_assoc();
      case RuleId::AppNaturality: {
        axiom();
        const auto& l = as<LiftA2Node>(lhs_, "LiftA2");
        const auto& q = as<LiftA2Node>(l.a, "LiftA2");
        const auto& r = as<LiftA2Node>(rhs_, "LiftA2");
        const auto& g = as<LiftA2Node>(r.b, "LiftA2");
        need(eq(q.a, r.a) && eq(q.b, g.a) && eq(l.b, g.b), "operands differ");
        for (const auto& f : {l.f, q.f, r.f, g.f}) table(f);
        forall({q.a->type(), q.b->type(), l.b->type()},
               [&](auto v) { return (*l.f)((*q.f)(v[0], v[1]), v[2]) == (*r.f)(v[0], (*g.f)(v[1], v[2])); },
               "p (q x y) z = f x (g y z)");
        return;
      }
      case RuleId::AppComm: {
        axiom();
        const auto& l = as<LiftA2Node>(lhs_, "LiftA2");
        const auto& r = as<LiftA2Node>(rhs_, "LiftA2");
        need(eq(l.a, r.b) && eq(l.b, r.a), "operands are not swapped");
        table(l.f);
        table(r.f);
        forall({l.a->type(), l.b->type()}, [&](auto v) { return (*r.f)(v[1], v[0]) == (*l.f)(v[0], v[1]); },
               "g y x = f x y");
        return;
      }
      case RuleId::MonadLeftId: {
        axiom();
        const auto& l = as<BindNode>(lhs_, "Bind");
        const Value& a = as<PureNode>(l.m, "Pure").value;
        table(l.k);
        need(eq(l.k(a), rhs_), "right side is not k a");
        return;
      }
      case RuleId::MonadRightId: {
        axiom();
        const auto& l = as<BindNode>(lhs_, "Bind");
        need(eq(l.m, rhs_), "right side is not the bound term");
        table(l.k);
        forall({l.m->type()}, [&](auto xs) {
          const auto* p = l.k(xs[0])->template as<PureNode>();
          return p && p->value == xs[0];
        }, "k x = ret x");
        return;
      }
      case RuleId::MonadAssoc: return monad_assoc();
      case RuleId::FunctorId: {
        axiom();
        const auto& l = as<FMapNode>(lhs_, "FMap");
        need(eq(l.a, rhs_), "right side is not the mapped term");
        table(l.g);
        forall({l.a->type()}, [&](auto xs) { return (*l.g)(xs[0]) == xs[0]; }, "g x = x");
        return;
      }
      case RuleId::FunctorComp: {
        axiom();
        const auto& l = as<FMapNode>(lhs_, "FMap");
        const auto& h = as<FMapNode>(l.a, "FMap");
        const auto& r = as<FMapNode>(rhs_, "FMap");
        need(eq(h.a, r.a), "mapped terms differ");
        for (const auto& f : {l.g, h.g, r.g}) table(f);
        forall({h.a->type()}, [&](auto xs) { return (*l.g)((*h.g)(xs[0])) == (*r.g)(xs[0]); }, "g (h x) = f x");
        return;
      }
      case RuleId::SelectInr: {
        axiom();
        const auto& l = as<SelectByNode>(lhs_, "SelectBy");
        const auto& m = as<FMapNode>(l.a, "FMap");
        need(eq(m.a, rhs_), "right side is not the scrutinee");
        table(l.f);
        table(m.g);
        forall({m.a->type()}, [&](auto xs) { return (*l.f)((*m.g)(xs[0])) == Value::inr(xs[0]); },
               "f (g x) = inr x");
        return;
      }
      case RuleId::Repeat: {
        refine_only();
        axiom();
        const auto& r = as<KPlusNode>(rhs_, "KPlus");
        need(is_repeat(lhs_, r.a, d_.count), "left side is not repeat a " + std::to_string(d_.count));
        return;
      }
      case RuleId::KPlus: {
        refine_only();
        premises(1);
        as<KPlusNode>(rhs_, "KPlus");
        premise(0, Relation::Refine, as<KPlusNode>(lhs_, "KPlus").a, rhs_);
        return;
      }
      case RuleId::PlusComm: {
        equiv_only();
        axiom();
        const auto& l = as<PlusNode>(lhs_, "Plus");
        const auto& r = as<PlusNode>(rhs_, "Plus");
        need(eq(l.a, r.b) && eq(l.b, r.a), "operands are not swapped");
        return;
      }
      case RuleId::PlusAssoc: {
        equiv_only();
        axiom();
        const auto& l = as<PlusNode>(lhs_, "Plus");
        const auto& lb = as<PlusNode>(l.b, "Plus");
        const auto& r = as<PlusNode>(rhs_, "Plus");
        const auto& ra = as<PlusNode>(r.a, "Plus");
        need(eq(l.a, ra.a) && eq(lb.a, ra.b) && eq(lb.b, r.b), "operands differ");
        return;
      }
      case RuleId::PlusLub: {
        refine_only();
        premises(2);
        const auto& l = as<PlusNode>(lhs_, "Plus");
        premise(0, Relation::Refine, l.a, rhs_);
        premise(1, Relation::Refine, l.b, rhs_);
        return;
      }
      case RuleId::LeftPlus:
      case RuleId::RightPlus: {
        refine_only();
        axiom();
        const auto& r = as<PlusNode>(rhs_, "Plus");
        need(eq(lhs_, d_.rule == RuleId::LeftPlus ? r.a : r.b), "left side is not a summand");
        return;
      }
      case RuleId::Promote: {
        refine_only();
        premises(1);
        const auto& p = d_.premises[0]->conclusion;
        need(p.rel == Relation::Equiv, "premise must be an equivalence");
        need((eq(p.lhs, lhs_) && eq(p.rhs, rhs_)) || (eq(p.lhs, rhs_) && eq(p.rhs, lhs_)), "premise sides");
        return;
      }
    }
    shape("unknown rule");
  }

 private:
  void equiv_only() { need(rel_ == Relation::Equiv, "rule concludes an equivalence"); }
  void refine_only() { need(rel_ == Relation::Refine, "rule concludes a refinement"); }
  void axiom() {
    premises(0);
    if (d_.rule != RuleId::Repeat && d_.rule != RuleId::LeftPlus && d_.rule != RuleId::RightPlus) equiv_only();
  }
  void premises(std::size_t n) { need(d_.premises.size() == n, "expected " + std::to_string(n) + " premises"); }
  void premise(std::size_t i, Relation rel, const TermRef& l, const TermRef& r) {
    const auto& p = d_.premises.at(i)->conclusion;
    need(p.rel == rel, "premise " + std::to_string(i) + " has the wrong relation");
    need(eq(p.lhs, l) && eq(p.rhs, r), "premise " + std::to_string(i) + " does not match");
  }

  void cong_fmap() {
    premises(1);
    const auto& l = as<FMapNode>(lhs_, "FMap");
    const auto& r = as<FMapNode>(rhs_, "FMap");
    need(same_fn(l.g, r.g), "functions differ");
    premise(0, rel_, l.a, r.a);
  }

  template <class N>
  void cong2(KindTag tag) {
    premises(2);
    const auto& l = as<N>(lhs_, to_string(tag).data());
    const auto& r = as<N>(rhs_, to_string(tag).data());
    need(same_fn(l.f, r.f), "functions differ");
    premise(0, rel_, l.a, r.a);
    premise(1, rel_, l.b, r.b);
  }

  void cong_bind() {
    const auto& l = as<BindNode>(lhs_, "Bind");
    const auto& r = as<BindNode>(rhs_, "Bind");
    table(l.k);
    table(r.k);
    need(same_type(l.k.domain(), r.k.domain()), "continuation domains differ");
    premises(1 + l.k.entries().size());
    premise(0, rel_, l.m, r.m);
    for (std::size_t i = 0; i < l.k.entries().size(); ++i) premise(i + 1, rel_, l.k.entries()[i], r.k.entries()[i]);
  }

  void app_assoc() {
    axiom();
    const auto& l = as<LiftA2Node>(lhs_, "LiftA2");
    const auto& f = as<LiftA2Node>(l.a, "LiftA2");
    const auto& r = as<LiftA2Node>(rhs_, "LiftA2");
    const auto& g = as<LiftA2Node>(r.b, "LiftA2");
    need(eq(f.a, r.a) && eq(f.b, g.a) && eq(l.b, g.b), "operands differ");
    for (const auto& fn : {l.f, f.f, r.f, g.f}) table(fn);
    const auto& ft = f.f->codomain();
    const auto& gt = g.f->codomain();
    need(ft->shape() == FiniteType::Shape::Function && gt->shape() == FiniteType::Shape::Function,
         "inner functions must be curried");
    forall(l.f->domain(), [&](auto v) { return (*l.f)(v) == apply_table(*ft, v[0], v[1]); }, "outer left is id");
    forall(r.f->domain(), [&](auto v) { return (*r.f)(v) == apply_table(*gt, v[1], v[0]); },
           "outer right is flip id");
    forall({f.a->type(), f.b->type(), l.b->type()},
           [&](auto v) {
             return apply_table(*ft, (*f.f)(v[0], v[1]), v[2]) == apply_table(*gt, (*g.f)(v[1], v[2]), v[0]);
           },
           "f x y z = g y z x");
  }

  void monad_assoc() {
    axiom();
    const auto& l = as<BindNode>(lhs_, "Bind");
    const auto& inner = as<BindNode>(l.m, "Bind");
    const auto& r = as<BindNode>(rhs_, "Bind");
    need(eq(inner.m, r.m), "bound terms differ");
    table(l.k);
    table(inner.k);
    table(r.k);
    forall({inner.m->type()}, [&](auto xs) {
      const auto& kx = r.k(xs[0]);
      const auto* b = kx->template as<BindNode>();
      if (!b || !b->k.is_table() || !eq(b->m, inner.k(xs[0]))) return false;
      if (!same_type(b->k.domain(), l.k.domain())) return false;
      for (std::size_t i = 0; i < l.k.entries().size(); ++i)
        if (!eq(b->k.entries()[i], l.k.entries()[i])) return false;
      return true;
    }, "k x = g x >>= h");
  }

  const Theory& th_;
  const Derivation& d_;
  Relation rel_;
  TermRef lhs_, rhs_;
};

}  // namespace

Verdict check_step(const Theory& th, const Derivation& d) {
  try {
    StepCheck(th, d).run();
    return Verdict::ok();
  } catch (const Reject& r) {
    return Verdict::reject(r.code, std::string(to_string(d.rule)) + ": " + r.why);
  } catch (const Error& e) {
    return Verdict::reject(e.code(), std::string(to_string(d.rule)) + ": " + e.what());
  }
}

Verdict check_derivation(const Theory& th, const DerivationRef& root) {
  std::unordered_set<const Derivation*> accepted;
  // Post-order without recursion: premises first, then the node.
  std::vector<std::pair<const Derivation*, bool>> work{{root.get(), false}};
  while (!work.empty()) {
    auto [d, expanded] = work.back();
    work.pop_back();
    if (accepted.count(d)) continue;
    if (!expanded) {
      work.push_back({d, true});
      for (const auto& p : d->premises)
        if (!accepted.count(p.get())) work.push_back({p.get(), false});
      continue;
    }
    if (auto v = check_step(th, *d); !v) return v;
    accepted.insert(d);
  }
  return Verdict::ok();
}

std::size_t derivation_size(const DerivationRef& d) {
  std::unordered_set<const Derivation*> seen;
  std::vector<const Derivation*> stack{d.get()};
  while (!stack.empty()) {
    auto* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return seen.size();
}

}  // namespace adverbs::theory
