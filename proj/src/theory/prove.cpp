#include <unordered_map>
#include <unordered_set>

#include "adverbs/theory/derivation.hpp"

namespace adverbs::theory {

TermRef repeat_term(const TermBuilder& b, const TermRef& a, std::uint64_t n) {
  TermRef t = a;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (b.vocabulary().has(KindTag::LiftA2))
      t = b.lift_a2(fns::second(a->type(), t->type()), a, t);
    else
      t = b.bind(a, Continuation::constant(a->type(), t));
  }
  return t;
}

namespace {

using TermMap = std::unordered_map<TermRef, DerivationRef, TermRefHash, TermRefEq>;

struct Step {
  TermRef to;
  DerivationRef proof;  // from ≅ to
};

constexpr std::size_t kFrontierCap = 20000;

class Prover {
 public:
  explicit Prover(const Theory& th) : th_(th) {}

  std::optional<DerivationRef> equiv(const TermRef& lhs, const TermRef& rhs, unsigned depth) {
    if (term_equal(lhs, rhs)) return refl(lhs);
    struct Side {
      TermMap seen;
      std::vector<TermRef> frontier;
    } left, right;
    left.seen.emplace(lhs, nullptr);
    left.frontier.push_back(lhs);
    right.seen.emplace(rhs, nullptr);
    right.frontier.push_back(rhs);
    for (unsigned step = 0; step < depth; ++step) {
      bool from_left = !left.frontier.empty() &&
                       (right.frontier.empty() || left.seen.size() <= right.seen.size());
      Side& me = from_left ? left : right;
      Side& other = from_left ? right : left;
      std::vector<TermRef> next;
      for (const auto& t : me.frontier) {
        for (auto& s : steps(t)) {
          if (me.seen.count(s.to)) continue;
          const auto& before = me.seen.at(t);
          auto proof = before ? trans(before, s.proof) : s.proof;
          me.seen.emplace(s.to, proof);
          if (auto hit = other.seen.find(s.to); hit != other.seen.end()) {
            auto l = from_left ? proof : hit->second;
            auto r = from_left ? hit->second : proof;
            return join(lhs, rhs, l, r);
          }
          if (next.size() < kFrontierCap) next.push_back(s.to);
        }
      }
      me.frontier = std::move(next);
      if (left.frontier.empty() && right.frontier.empty()) break;
    }
    return std::nullopt;
  }

  std::optional<DerivationRef> refine(const TermRef& lhs, const TermRef& rhs, unsigned depth) {
    if (!th_.has(Relation::Refine) || depth == 0) return std::nullopt;
    auto j = Judgment::refine(lhs, rhs);
    if (term_equal(lhs, rhs)) return Derivation::make(RuleId::Refl, j);
    if (th_.has(RuleId::Promote))
      if (auto e = equiv(lhs, rhs, depth)) return Derivation::make(RuleId::Promote, j, {*e});
    if (const auto* p = rhs->as<PlusNode>()) {
      if (th_.has(RuleId::LeftPlus) && term_equal(lhs, p->a)) return Derivation::make(RuleId::LeftPlus, j);
      if (th_.has(RuleId::RightPlus) && term_equal(lhs, p->b)) return Derivation::make(RuleId::RightPlus, j);
    }
    if (const auto* k = rhs->as<KPlusNode>(); k && th_.has(RuleId::Repeat)) {
      for (std::uint64_t n = 0; n <= depth; ++n) {
        auto d = Derivation::make(RuleId::Repeat, j, {}, n);
        if (check_step(th_, *d)) return d;
      }
    }
    if (const auto* p = lhs->as<PlusNode>(); p && th_.has(RuleId::PlusLub)) {
      auto a = refine(p->a, rhs, depth - 1);
      auto b = a ? refine(p->b, rhs, depth - 1) : std::nullopt;
      if (a && b) return Derivation::make(RuleId::PlusLub, j, {*a, *b});
    }
    if (const auto* k = lhs->as<KPlusNode>(); k && rhs->as<KPlusNode>() && th_.has(RuleId::KPlus)) {
      if (auto a = refine(k->a, rhs, depth - 1)) return Derivation::make(RuleId::KPlus, j, {*a});
    }
    if (auto c = congruence(lhs, rhs, Relation::Refine, depth)) return c;
    if (th_.has(RuleId::Trans)) {
      // Through a summand, or through the body of a Kleene plus.
      if (const auto* p = rhs->as<PlusNode>()) {
        for (bool left_side : {true, false}) {
          RuleId r = left_side ? RuleId::LeftPlus : RuleId::RightPlus;
          const auto& part = left_side ? p->a : p->b;
          if (!th_.has(r)) continue;
          if (auto d = refine(lhs, part, depth - 1))
            return trans(*d, Derivation::make(r, Judgment::refine(part, rhs)));
        }
      }
      if (const auto* k = rhs->as<KPlusNode>(); k && th_.has(RuleId::Repeat)) {
        if (auto d = refine(lhs, k->a, depth - 1))
          return trans(*d, Derivation::make(RuleId::Repeat, Judgment::refine(k->a, rhs), {}, 0));
      }
    }
    return std::nullopt;
  }

 private:
  DerivationRef refl(const TermRef& t) { return Derivation::make(RuleId::Refl, Judgment::equiv(t, t)); }

  DerivationRef trans(const DerivationRef& a, const DerivationRef& b) {
    const auto& j = a->conclusion;
    return Derivation::make(RuleId::Trans, Judgment{j.rel, j.lhs, b->conclusion.rhs}, {a, b});
  }

  DerivationRef sym(const DerivationRef& a) {
    return Derivation::make(RuleId::Sym, Judgment::equiv(a->conclusion.rhs, a->conclusion.lhs), {a});
  }

  // l: lhs ≅ m (or null when m is lhs), r: rhs ≅ m (or null when m is rhs).
  DerivationRef join(const TermRef& lhs, const TermRef& rhs, const DerivationRef& l, const DerivationRef& r) {
    if (!r) return l;
    if (!l) return sym(r);
    (void)lhs;
    (void)rhs;
    return trans(l, sym(r));
  }

  bool try_axiom(RuleId rule, const TermRef& from, const TermRef& to, std::vector<Step>& out, bool flipped = false) {
    if (!th_.has(rule)) return false;
    auto d = flipped ? Derivation::make(rule, Judgment::equiv(to, from)) : Derivation::make(rule, Judgment::equiv(from, to));
    if (!check_step(th_, *d)) return false;
    if (flipped) {
      if (!th_.has(RuleId::Sym)) return false;
      d = sym(d);
    }
    out.push_back({to, d});
    return true;
  }

  static TermRef rebuild(const TermRef& t, Term::Payload p) { return std::make_shared<Term>(t->type(), std::move(p)); }

  std::vector<Step> root_steps(const TermRef& t) {
    std::vector<Step> out;
    if (const auto* l = t->as<LiftA2Node>()) {
      try_axiom(RuleId::AppRightId, t, l->a, out);
      try_axiom(RuleId::AppLeftId, t, l->b, out);
      if (th_.has(RuleId::AppComm) && l->f->is_table())
        try_axiom(RuleId::AppComm, t, rebuild(t, LiftA2Node{fns::flip(l->f), l->b, l->a}), out);
    }
    if (const auto* bn = t->as<BindNode>(); bn && bn->k.is_table()) {
      if (const auto* p = bn->m->as<PureNode>()) try_axiom(RuleId::MonadLeftId, t, bn->k(p->value), out);
      try_axiom(RuleId::MonadRightId, t, bn->m, out);
      if (th_.has(RuleId::MonadAssoc)) {
        if (const auto* inner = bn->m->as<BindNode>(); inner && inner->k.is_table()) {
          auto k = Continuation::tabulate(inner->m->type(), [&](const Value& x) {
            return std::make_shared<Term>(t->type(), BindNode{inner->k(x), bn->k});
          });
          try_axiom(RuleId::MonadAssoc, t, rebuild(t, BindNode{inner->m, k}), out);
        }
        if (auto back = unassoc(t)) try_axiom(RuleId::MonadAssoc, t, back, out, true);
      }
    }
    if (const auto* f = t->as<FMapNode>()) {
      try_axiom(RuleId::FunctorId, t, f->a, out);
      if (const auto* h = f->a->as<FMapNode>(); h && th_.has(RuleId::FunctorComp) && f->g->is_table() &&
                                                 h->g->is_table())
        try_axiom(RuleId::FunctorComp, t, rebuild(t, FMapNode{fns::compose(f->g, h->g), h->a}), out);
    }
    if (const auto* s = t->as<SelectByNode>())
      if (const auto* m = s->a->as<FMapNode>()) try_axiom(RuleId::SelectInr, t, m->a, out);
    if (const auto* p = t->as<PlusNode>()) {
      try_axiom(RuleId::PlusComm, t, rebuild(t, PlusNode{p->b, p->a}), out);
      if (const auto* pb = p->b->as<PlusNode>())
        try_axiom(RuleId::PlusAssoc, t, rebuild(t, PlusNode{rebuild(t, PlusNode{p->a, pb->a}), pb->b}), out);
      if (const auto* pa = p->a->as<PlusNode>())
        try_axiom(RuleId::PlusAssoc, t, rebuild(t, PlusNode{pa->a, rebuild(t, PlusNode{pa->b, p->b})}), out, true);
    }
    return out;
  }

  // Bind(m, x => Bind(g x, h)) back to Bind(Bind(m, g), h).
  TermRef unassoc(const TermRef& t) {
    const auto& bn = t->get<BindNode>();
    const Continuation* h = nullptr;
    std::vector<TermRef> g;
    for (const auto& e : bn.k.entries()) {
      const auto* in = e->as<BindNode>();
      if (!in || !in->k.is_table()) return nullptr;
      if (h && (!same_type(h->domain(), in->k.domain()) || h->entries() != in->k.entries())) return nullptr;
      h = &in->k;
      g.push_back(in->m);
    }
    if (!h) return nullptr;
    for (const auto& x : g)
      if (!same_type(x->type(), g.front()->type())) return nullptr;
    auto inner = std::make_shared<Term>(g.front()->type(), BindNode{bn.m, Continuation::from_table(bn.k.domain(), g)});
    return rebuild(t, BindNode{inner, *h});
  }

  // Rewrites below the root, wrapped in the congruence rule of t's kind.
  std::vector<Step> inner_steps(const TermRef& t) {
    std::vector<Step> out;
    auto cong = [&](RuleId rule, const TermRef& to, std::vector<DerivationRef> prem) {
      out.push_back({to, Derivation::make(rule, Judgment::equiv(t, to), std::move(prem))});
    };
    if (const auto* n = t->as<FMapNode>(); n && th_.has(RuleId::CongFMap)) {
      for (auto& s : steps(n->a)) cong(RuleId::CongFMap, rebuild(t, FMapNode{n->g, s.to}), {s.proof});
    } else if (const auto* n = t->as<LiftA2Node>(); n && th_.has(RuleId::CongLiftA2)) {
      for (auto& s : steps(n->a)) cong(RuleId::CongLiftA2, rebuild(t, LiftA2Node{n->f, s.to, n->b}), {s.proof, refl(n->b)});
      for (auto& s : steps(n->b)) cong(RuleId::CongLiftA2, rebuild(t, LiftA2Node{n->f, n->a, s.to}), {refl(n->a), s.proof});
    } else if (const auto* n = t->as<SelectByNode>(); n && th_.has(RuleId::CongSelectBy)) {
      for (auto& s : steps(n->a))
        cong(RuleId::CongSelectBy, rebuild(t, SelectByNode{n->f, s.to, n->b}), {s.proof, refl(n->b)});
      for (auto& s : steps(n->b))
        cong(RuleId::CongSelectBy, rebuild(t, SelectByNode{n->f, n->a, s.to}), {refl(n->a), s.proof});
    } else if (const auto* n = t->as<PlusNode>(); n && th_.has(RuleId::CongPlus)) {
      for (auto& s : steps(n->a)) cong(RuleId::CongPlus, rebuild(t, PlusNode{s.to, n->b}), {s.proof, refl(n->b)});
      for (auto& s : steps(n->b)) cong(RuleId::CongPlus, rebuild(t, PlusNode{n->a, s.to}), {refl(n->a), s.proof});
    } else if (const auto* n = t->as<KPlusNode>(); n && th_.has(RuleId::CongKPlus)) {
      for (auto& s : steps(n->a)) cong(RuleId::CongKPlus, rebuild(t, KPlusNode{s.to}), {s.proof});
    } else if (const auto* n = t->as<BindNode>(); n && th_.has(RuleId::CongBind) && n->k.is_table()) {
      const auto& es = n->k.entries();
      auto entry_refls = [&] {
        std::vector<DerivationRef> ps;
        std::unordered_map<const Term*, DerivationRef> memo;
        for (const auto& e : es) {
          auto& d = memo[e.get()];
          if (!d) d = refl(e);
          ps.push_back(d);
        }
        return ps;
      };
      for (auto& s : steps(n->m)) {
        auto ps = entry_refls();
        ps.insert(ps.begin(), s.proof);
        cong(RuleId::CongBind, rebuild(t, BindNode{s.to, n->k}), std::move(ps));
      }
      // Every entry sharing a term is rewritten together.
      std::unordered_set<const Term*> done;
      for (const auto& e : es) {
        if (!done.insert(e.get()).second) continue;
        for (auto& s : steps(e)) {
          std::vector<TermRef> entries;
          auto ps = entry_refls();
          for (std::size_t i = 0; i < es.size(); ++i) {
            entries.push_back(es[i] == e ? s.to : es[i]);
            if (es[i] == e) ps[i] = s.proof;
          }
          ps.insert(ps.begin(), refl(n->m));
          cong(RuleId::CongBind, rebuild(t, BindNode{n->m, Continuation::from_table(n->k.domain(), entries)}),
               std::move(ps));
        }
      }
    }
    return out;
  }

  std::vector<Step> steps(const TermRef& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    auto out = root_steps(t);
    auto inner = inner_steps(t);
    out.insert(out.end(), inner.begin(), inner.end());
    keep_.push_back(t);
    memo_.emplace(t.get(), out);
    return out;
  }

  std::optional<DerivationRef> congruence(const TermRef& lhs, const TermRef& rhs, Relation rel, unsigned depth) {
    if (lhs->tag() != rhs->tag() || depth == 0) return std::nullopt;
    auto j = Judgment{rel, lhs, rhs};
    auto sub = [&](const TermRef& a, const TermRef& b) -> std::optional<DerivationRef> {
      if (term_equal(a, b)) return Derivation::make(RuleId::Refl, Judgment{rel, a, b});
      return rel == Relation::Refine ? refine(a, b, depth - 1) : equiv(a, b, depth - 1);
    };
    auto all = [&](RuleId rule, std::vector<std::pair<TermRef, TermRef>> pairs) -> std::optional<DerivationRef> {
      if (!th_.has(rule)) return std::nullopt;
      std::vector<DerivationRef> ps;
      for (const auto& [a, b] : pairs) {
        auto d = sub(a, b);
        if (!d) return std::nullopt;
        ps.push_back(*d);
      }
      auto d = Derivation::make(rule, j, std::move(ps));
      if (!check_step(th_, *d)) return std::nullopt;
      return d;
    };
    switch (lhs->tag()) {
      case KindTag::FMap:
        return all(RuleId::CongFMap, {{lhs->get<FMapNode>().a, rhs->get<FMapNode>().a}});
      case KindTag::LiftA2: {
        const auto& l = lhs->get<LiftA2Node>();
        const auto& r = rhs->get<LiftA2Node>();
        return all(RuleId::CongLiftA2, {{l.a, r.a}, {l.b, r.b}});
      }
      case KindTag::SelectBy: {
        const auto& l = lhs->get<SelectByNode>();
        const auto& r = rhs->get<SelectByNode>();
        return all(RuleId::CongSelectBy, {{l.a, r.a}, {l.b, r.b}});
      }
      case KindTag::Plus: {
        const auto& l = lhs->get<PlusNode>();
        const auto& r = rhs->get<PlusNode>();
        return all(RuleId::CongPlus, {{l.a, r.a}, {l.b, r.b}});
      }
      case KindTag::KPlus:
        return all(RuleId::CongKPlus, {{lhs->get<KPlusNode>().a, rhs->get<KPlusNode>().a}});
      case KindTag::Bind: {
        const auto& l = lhs->get<BindNode>();
        const auto& r = rhs->get<BindNode>();
        if (!l.k.is_table() || !r.k.is_table() || l.k.entries().size() != r.k.entries().size()) return std::nullopt;
        std::vector<std::pair<TermRef, TermRef>> pairs{{l.m, r.m}};
        for (std::size_t i = 0; i < l.k.entries().size(); ++i) pairs.push_back({l.k.entries()[i], r.k.entries()[i]});
        return all(RuleId::CongBind, std::move(pairs));
      }
      default:
        return std::nullopt;
    }
  }

  const Theory& th_;
  std::unordered_map<const Term*, std::vector<Step>> memo_;
  std::vector<TermRef> keep_;
};

}  // namespace

std::optional<DerivationRef> prove_bounded(const Theory& th, const TermBuilder& b, const Judgment& j, unsigned depth) {
  if (depth == 0 || !same_type(j.lhs->type(), j.rhs->type())) return std::nullopt;
  (void)b;
  Prover p(th);
  auto d = j.rel == Relation::Equiv ? p.equiv(j.lhs, j.rhs, depth) : p.refine(j.lhs, j.rhs, depth);
  // Never hand back something the checker would refuse.
  if (d && !check_derivation(th, *d)) return std::nullopt;
  return d;
}

}  // namespace adverbs::theory
