#include <map>

#include "adverbs/error.hpp"
#include "adverbs/netsim/server.hpp"

namespace adverbs::net {

using theory::Derivation;
using theory::DerivationRef;
using theory::Judgment;
using theory::RuleId;

namespace {

template <class N>
StmtRef make(N n) {
  return std::make_shared<const Stmt>(Stmt{std::move(n)});
}

void flatten(const StmtRef& s, std::vector<StmtRef>& out) {
  if (const auto* q = std::get_if<Seq>(&s->node)) {
    flatten(q->a, out);
    flatten(q->b, out);
  } else {
    out.push_back(s);
  }
}

StmtRef right_nested(const std::vector<StmtRef>& xs, std::size_t from) {
  if (from + 1 == xs.size()) return xs[from];
  return seq(xs[from], right_nested(xs, from + 1));
}

[[noreturn]] void bad_shape(const std::string& why) { throw Error(ErrorCode::InvalidArgument, why); }

const BindNode& bind_of(const TermRef& t) {
  if (t->tag() != KindTag::Bind) bad_shape("expected a sequence, got " + t->kind().to_string());
  return t->get<BindNode>();
}

DerivationRef refl(const TermRef& t, theory::Relation rel = theory::Relation::Refine) {
  return Derivation::make(RuleId::Refl, {rel, t, t});
}

DerivationRef trans(const DerivationRef& p, const DerivationRef& q) {
  return Derivation::make(RuleId::Trans, {p->conclusion.rel, p->conclusion.lhs, q->conclusion.rhs}, {p, q});
}

/// Bind(a, const b) ⊑ kplus(plus(a, b)): each half is a summand, and two
/// repetitions of the sum are within its iteration.
DerivationRef seq_within_choice(const TermBuilder& b, const TermRef& seq_term, const TermRef& target) {
  const auto& s = bind_of(seq_term);
  const auto& sum = target->get<KPlusNode>().a;
  const auto& p = sum->get<PlusNode>();
  auto twice = theory::repeat_term(b, sum, 1);
  auto halves = Derivation::make(RuleId::CongBind, Judgment::refine(seq_term, twice),
                                 {Derivation::make(RuleId::LeftPlus, Judgment::refine(p.a, sum)),
                                  Derivation::make(RuleId::RightPlus, Judgment::refine(s.k.entries().at(0), sum))});
  return trans(halves, Derivation::make(RuleId::Repeat, Judgment::refine(twice, target), {}, 1));
}

/// x ≅ Bind(a, const f), where x is the right-nested sequence of a's
/// statements followed by f.
DerivationRef reassociate(const TermBuilder& b, const TermRef& x, const TermRef& a, const TermRef& f) {
  auto goal = b.bind(a, Continuation::constant(a->type(), f));
  if (term_equal(x, goal)) return refl(x, theory::Relation::Equiv);
  const auto& xs = bind_of(x);
  const auto& as = bind_of(a);
  auto inner = reassociate(b, xs.k.entries().at(0), as.k.entries().at(0), f);
  auto mid = b.bind(xs.m, Continuation::constant(xs.m->type(), inner->conclusion.rhs));
  auto d1 = Derivation::make(RuleId::CongBind, Judgment::equiv(x, mid), {refl(xs.m, theory::Relation::Equiv), inner});
  auto assoc = Derivation::make(RuleId::MonadAssoc, Judgment::equiv(goal, mid));
  return trans(d1, Derivation::make(RuleId::Sym, Judgment::equiv(mid, goal), {assoc}));
}

/// step_0 >> (step_1 >> ... >> pure tt) ⊑ kplus(plus(step_0, plus(step_1, ... pure tt))).
DerivationRef loop_within_choice(const TermBuilder& b, const TermRef& loop, const TermRef& target) {
  const auto& sum = target->get<KPlusNode>().a;
  std::vector<TermRef> nodes{sum};
  while (nodes.back()->tag() == KindTag::Plus) nodes.push_back(nodes.back()->get<PlusNode>().b);
  std::size_t n = nodes.size() - 1;

  auto summand = [&](std::size_t i) {
    DerivationRef d = i < n ? Derivation::make(RuleId::LeftPlus,
                                               Judgment::refine(nodes[i]->get<PlusNode>().a, nodes[i]))
                            : refl(nodes[n]);
    for (std::size_t j = i; j-- > 0;)
      d = trans(d, Derivation::make(RuleId::RightPlus, Judgment::refine(nodes[j + 1], nodes[j])));
    return d;
  };

  std::vector<TermRef> rest{loop};
  for (std::size_t k = 0; k < n; ++k) rest.push_back(bind_of(rest.back()).k.entries().at(0));
  DerivationRef d = summand(n);
  for (std::size_t k = n; k-- > 0;) {
    auto rep = theory::repeat_term(b, sum, n - k);
    d = Derivation::make(RuleId::CongBind, Judgment::refine(rest[k], rep), {summand(k), d});
  }
  return trans(d, Derivation::make(RuleId::Repeat, Judgment::refine(d->conclusion.rhs, target), {}, n));
}

/// Both sides bind the same prefix and then the same read; the per-entry
/// refinements come from `entry`, memoized on the entry pair.
DerivationRef under_prefix_and_read(
    const TermRef& lhs, const TermRef& rhs,
    const std::function<DerivationRef(const TermRef&, const TermRef&)>& entry) {
  const auto& l = bind_of(lhs);
  const auto& r = bind_of(rhs);
  const auto& lo = l.k.entries().at(0);
  const auto& ro = r.k.entries().at(0);
  const auto& li = bind_of(lo);
  const auto& ri = bind_of(ro);
  std::map<std::pair<const Term*, const Term*>, DerivationRef> memo;
  std::vector<DerivationRef> per{refl(li.m)};
  for (std::size_t i = 0; i < li.k.entries().size(); ++i) {
    const auto& a = li.k.entries()[i];
    const auto& c = ri.k.entries().at(i);
    auto& slot = memo[{a.get(), c.get()}];
    if (!slot) slot = entry(a, c);
    per.push_back(slot);
  }
  auto loop = Derivation::make(RuleId::CongBind, Judgment::refine(lo, ro), std::move(per));
  return Derivation::make(RuleId::CongBind, Judgment::refine(lhs, rhs), {refl(l.m), loop});
}

DerivationRef chain_congruence(const TermRef& l, const TermRef& r, const DerivationRef& body) {
  if (l->tag() != KindTag::Plus) return refl(l);
  const auto& lp = l->get<PlusNode>();
  const auto& rp = r->get<PlusNode>();
  const auto& ls = bind_of(lp.a);
  const auto& rs = bind_of(rp.a);
  auto step = Derivation::make(RuleId::CongBind, Judgment::refine(lp.a, rp.a), {refl(ls.m), body});
  (void)rs;
  return Derivation::make(RuleId::CongPlus, Judgment::refine(l, r), {step, chain_congruence(lp.b, rp.b, body)});
}

}  // namespace

Layers layers(const Program& impl, const Program& spec) {
  std::vector<StmtRef> stmts;
  flatten(impl.body, stmts);
  if (stmts.size() < 2) bad_shape("implementation needs a prefix and a final loop");
  const auto* loop = std::get_if<For>(&stmts.back()->node);
  if (!loop) bad_shape("implementation must end with a FOR loop");
  const auto* body = std::get_if<Seq>(&loop->body->node);
  if (!body) bad_shape("loop body must be two statements");

  Layers out;
  out.impl = impl;
  out.spec = spec;
  out.a = right_nested({stmts.begin(), stmts.end() - 1}, 0);
  out.b = body->a;
  out.c = body->b;
  out.l1 = Program{seq(out.a, stmts.back()), false};
  out.l2 = Program{seq(out.a, make(OneOf{loop->list, loop->var, seq(out.b, out.c)})), false};
  out.l3 = Program{seq(out.a, make(OneOf{loop->list, loop->var, make(Or{out.b, out.c})})), false};
  return out;
}

Fixtures embed_layers(Server& server, const Layers& p) {
  return {p, server.embed(p.impl), server.embed(p.l1), server.embed(p.l2), server.embed(p.l3), server.embed(p.spec)};
}

theory::Theory server_theory() {
  using theory::TheoryId;
  return theory::theory_of({TheoryId::Dynamically, TheoryId::Repeatedly, TheoryId::Nondeterministically});
}

DerivationRef derive_impl_l1(const Server& s, const Fixtures& f) {
  const auto& l1 = bind_of(f.l1);
  auto eq = reassociate(s.builder(), f.impl, l1.m, l1.k.entries().at(0));
  return Derivation::make(RuleId::Promote, Judgment::refine(f.impl, f.l1), {eq});
}

DerivationRef derive_l1_l2(const Server& s, const Fixtures& f) {
  return under_prefix_and_read(f.l1, f.l2, [&](const TermRef& a, const TermRef& c) {
    return loop_within_choice(s.builder(), a, c);
  });
}

DerivationRef derive_l2_l3(const Server& s, const Fixtures& f) {
  DerivationRef body;
  return under_prefix_and_read(f.l2, f.l3, [&](const TermRef& a, const TermRef& c) {
    const auto& l = a->get<KPlusNode>().a;
    const auto& r = c->get<KPlusNode>().a;
    if (!body && l->tag() == KindTag::Plus) {
      auto bc = bind_of(l->get<PlusNode>().a).k.entries().at(0);
      auto orbc = bind_of(r->get<PlusNode>().a).k.entries().at(0);
      body = seq_within_choice(s.builder(), bc, orbc);
    }
    return Derivation::make(RuleId::CongKPlus, Judgment::refine(a, c), {chain_congruence(l, r, body)});
  });
}

DerivationRef derive_l3_spec(const Server& s, const Fixtures& f) {
  const auto& once = f.spec->get<KPlusNode>().a;
  auto d = seq_within_choice(s.builder(), f.l3, once);
  return trans(d, Derivation::make(RuleId::Repeat, Judgment::refine(once, f.spec), {}, 0));
}

std::vector<LinkReport> verify_chain(Server& server, const Fixtures& f, unsigned bound_l, unsigned bound_r) {
  struct Link {
    const char* name;
    TermRef lhs, rhs;
    DerivationRef (*derive)(const Server&, const Fixtures&);
  };
  const Link links[] = {
      {"Impl ⊑ L1", f.impl, f.l1, derive_impl_l1},
      {"L1 ⊑ L2", f.l1, f.l2, derive_l1_l2},
      {"L2 ⊑ L3", f.l2, f.l3, derive_l2_l3},
      {"L3 ⊑ Spec", f.l3, f.spec, derive_l3_spec},
  };
  auto th = server_theory();
  auto model = server.outcome_model();
  std::vector<LinkReport> out;
  for (const auto& link : links) {
    LinkReport r;
    r.name = link.name;
    r.bound_l = bound_l;
    r.bound_r = bound_r;
    try {
      auto d = link.derive(server, f);
      auto v = theory::check_derivation(th, d);
      bool matches = d->conclusion.rel == theory::Relation::Refine && term_equal(d->conclusion.lhs, link.lhs) &&
                     term_equal(d->conclusion.rhs, link.rhs);
      r.derivation_ok = v.accepted && matches;
      r.derivation_note = !v.accepted ? v.reason
                          : matches   ? std::to_string(theory::derivation_size(d)) + " steps"
                                      : "conclusion does not match the link";
    } catch (const Error& e) {
      r.derivation_note = e.what();
    }
    r.oracle = sem::oracle_refines(link.lhs, link.rhs, model, bound_l, bound_r);
    // A witness against an accepted derivation only shows that bound_r is
    // too small for the right side to catch up.
    if (r.derivation_ok)
      r.status = r.oracle.holds ? Status::Proved : Status::Unknown;
    else
      r.status = r.oracle.holds ? Status::Unknown : Status::Refuted;
    if (r.derivation_ok && !r.oracle.holds) r.derivation_note += "; oracle witness beyond the right bound";
    out.push_back(std::move(r));
  }
  return out;
}

LinkReport check_reverse(Server& server, const Fixtures& f, unsigned bound_l, unsigned bound_r) {
  LinkReport r;
  r.name = "Spec ⊑ Impl";
  r.bound_l = bound_l;
  r.bound_r = bound_r;
  r.derivation_note = "oracle only";
  r.oracle = sem::oracle_refines(f.spec, f.impl, server.outcome_model(), bound_l, bound_r);
  r.status = r.oracle.holds ? Status::Unknown : Status::Refuted;
  return r;
}

}  // namespace adverbs::net
