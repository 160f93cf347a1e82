#include <gtest/gtest.h>

#include <random>

#include "adverbs/theory/derivation.hpp"
#include "adverbs/theory/derivation_io.hpp"
#include "support/random_terms.hpp"

using namespace adverbs;
using namespace adverbs::theory;
using adverbs::testing::data_effect;
using adverbs::testing::full_vocabulary;
using adverbs::testing::RandomTerms;

namespace {

const std::vector<TheoryId> kAll = {TheoryId::Streamingly,          TheoryId::Statically,  TheoryId::StaticallyInParallel,
                                    TheoryId::Conditionally,        TheoryId::Dynamically, TheoryId::Repeatedly,
                                    TheoryId::Nondeterministically};

TermBuilder app_builder() { return TermBuilder(Vocabulary({KindTag::Pure, KindTag::LiftA2}, {data_effect()})); }

TermRef get(const TermBuilder& b, const char* v) { return b.effect("DataEff", "GetData", {Value::symbol(v)}); }
TermRef tru(const TermBuilder& b) { return b.pure(Value::boolean(true)); }

}  // namespace

TEST(TheoryOf, StaticallyHasEightSchemas) {
  const int congruence = 1, laws = 4, equivalence = 3;
  EXPECT_EQ(theory_of({TheoryId::Statically}).rules.size(), static_cast<std::size_t>(congruence + laws + equivalence));
}

TEST(TheoryOf, ParallelSwapsAssociativityForCommutativity) {
  auto th = theory_of({TheoryId::StaticallyInParallel});
  EXPECT_TRUE(th.has(RuleId::AppComm));
  EXPECT_FALSE(th.has(RuleId::AppAssoc));
  EXPECT_FALSE(th.has(RuleId::AppNaturality));
}

TEST(TheoryOf, RefinementOnlyWithAddOns) {
  EXPECT_FALSE(theory_of({TheoryId::Statically, TheoryId::Dynamically}).has(Relation::Refine));
  EXPECT_TRUE(theory_of({TheoryId::Dynamically, TheoryId::Repeatedly}).has(Relation::Refine));
  EXPECT_TRUE(theory_of({TheoryId::Nondeterministically}).has(Relation::Refine));
}

TEST(TheoryOf, UnionLaws) {
  auto r = theory_of({TheoryId::Repeatedly});
  EXPECT_EQ(theory_union(r, r), r);
  std::mt19937 rng(3);
  auto random_theory = [&] {
    std::set<TheoryId> ids;
    while (ids.empty())
      for (auto id : kAll)
        if (rng() % 3 == 0) ids.insert(id);
    return theory_of(ids);
  };
  for (int i = 0; i < 200; ++i) {
    auto x = random_theory(), y = random_theory(), z = random_theory();
    EXPECT_EQ(theory_union(x, y), theory_union(y, x));
    EXPECT_EQ(theory_union(theory_union(x, y), z), theory_union(x, theory_union(y, z)));
    EXPECT_EQ(theory_union(x, x), x);
    std::set<TheoryId> ids = x.ids;
    ids.insert(y.ids.begin(), y.ids.end());
    EXPECT_EQ(theory_union(x, y), theory_of(ids));
  }
}

TEST(TheoryOf, EmptyIsRejected) {
  EXPECT_THROW(theory_of({}), Error);
}

TEST(Check, RightIdentityInstance) {
  auto b = app_builder();
  auto a = get(b, "x");
  auto d = Derivation::make(RuleId::AppRightId, Judgment::equiv(b.lift_a2(fns::andb(), a, tru(b)), a));
  // Oracle: andb x true = x on both booleans.
  for (bool x : {false, true}) ASSERT_EQ(x && true, x);
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::Statically}), d));
}

TEST(Check, SideConditionFailureNamesAssignment) {
  auto b = app_builder();
  auto a = get(b, "x");
  auto d = Derivation::make(RuleId::AppRightId, Judgment::equiv(b.lift_a2(fns::orb(), a, tru(b)), a));
  auto v = check_derivation(theory_of({TheoryId::Statically}), d);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.code, ErrorCode::SideConditionFails);
  EXPECT_NE(v.reason.find("false"), std::string::npos);
}

TEST(Check, Reflexivity) {
  TermBuilder b(full_vocabulary());
  RandomTerms gen(b, 5);
  for (auto id : kAll) {
    auto t = gen.gen(3);
    EXPECT_TRUE(check_derivation(theory_of({id}), Derivation::make(RuleId::Refl, Judgment::equiv(t, t))));
  }
}

TEST(Check, CommutativityNeedsParallel) {
  auto b = app_builder();
  auto t = get(b, "x"), u = get(b, "y");
  auto d = Derivation::make(RuleId::AppComm,
                            Judgment::equiv(b.lift_a2(fns::andb(), t, u), b.lift_a2(fns::andb(), u, t)));
  auto v = check_derivation(theory_of({TheoryId::Statically}), d);
  EXPECT_EQ(v.code, ErrorCode::RuleNotInTheory);
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::StaticallyInParallel}), d));
}

TEST(Check, OpaqueFunctionsAreRefused) {
  auto b = app_builder();
  auto a = get(b, "x");
  auto f = Fn::opaque("fst", {bool_type(), bool_type()}, bool_type(), [](auto xs) { return xs[0]; });
  auto d = Derivation::make(RuleId::AppRightId, Judgment::equiv(b.lift_a2(f, a, tru(b)), a));
  EXPECT_EQ(check_derivation(theory_of({TheoryId::Statically}), d).code, ErrorCode::OpaqueFunctionInSideCondition);
}

TEST(Check, PremisesMustChain) {
  auto b = app_builder();
  auto x = get(b, "x"), y = get(b, "y");
  auto p = Derivation::make(RuleId::Refl, Judgment::equiv(x, x));
  auto q = Derivation::make(RuleId::Refl, Judgment::equiv(y, y));
  auto d = Derivation::make(RuleId::Trans, Judgment::equiv(x, y), {p, q});
  EXPECT_FALSE(check_derivation(theory_of({TheoryId::Statically}), d));
  auto lifted = Derivation::make(RuleId::CongLiftA2,
                                 Judgment::equiv(b.lift_a2(fns::andb(), x, y), b.lift_a2(fns::andb(), x, x)), {p, q});
  EXPECT_FALSE(check_derivation(theory_of({TheoryId::Statically}), lifted));
}

TEST(Check, AssociativityAndNaturality) {
  auto b = app_builder();
  auto x = get(b, "x"), y = get(b, "y"), z = get(b, "z");
  auto bb = FiniteType::function(bool_type(), bool_type());
  // f x y = fun z => x && y && z, g y z = fun x => x && y && z.
  auto f = Fn::tabulate("f", {bool_type(), bool_type()}, bb, [&](auto v) {
    return tabulate(*bb, [&](const Value& w) { return Value::boolean(v[0].as_bool() && v[1].as_bool() && w.as_bool()); });
  });
  auto g = Fn::tabulate("g", {bool_type(), bool_type()}, bb, [&](auto v) {
    return tabulate(*bb, [&](const Value& w) { return Value::boolean(w.as_bool() && v[0].as_bool() && v[1].as_bool()); });
  });
  auto lhs = b.lift_a2(fns::apply(bb), b.lift_a2(f, x, y), z);
  auto rhs = b.lift_a2(fns::apply_flipped(bb), x, b.lift_a2(g, y, z));
  auto th = theory_of({TheoryId::Statically});
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::AppAssoc, Judgment::equiv(lhs, rhs))));
  auto bad = b.lift_a2(fns::apply_flipped(bb), x, b.lift_a2(f, y, z));
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::AppAssoc, Judgment::equiv(lhs, bad))));  // f is symmetric
  auto nl = b.lift_a2(fns::andb(), b.lift_a2(fns::andb(), x, y), z);
  auto nr = b.lift_a2(fns::andb(), x, b.lift_a2(fns::andb(), y, z));
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::AppNaturality, Judgment::equiv(nl, nr))));
  auto mixed = b.lift_a2(fns::orb(), x, b.lift_a2(fns::andb(), y, z));
  EXPECT_EQ(check_derivation(th, Derivation::make(RuleId::AppNaturality, Judgment::equiv(nl, mixed))).code,
            ErrorCode::SideConditionFails);
}

TEST(Check, MonadLaws) {
  TermBuilder b(Vocabulary({KindTag::Pure, KindTag::Bind}, {data_effect()}));
  auto th = theory_of({TheoryId::Dynamically});
  auto x = get(b, "x"), y = get(b, "y");
  auto k = [&](const Value& v) { return v.as_bool() ? x : y; };
  auto left = b.bind(b.pure(Value::boolean(true)), k);
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::MonadLeftId, Judgment::equiv(left, x))));
  EXPECT_FALSE(check_derivation(th, Derivation::make(RuleId::MonadLeftId, Judgment::equiv(left, y))));
  auto right = b.bind(x, [&](const Value& v) { return b.pure(v); });
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::MonadRightId, Judgment::equiv(right, x))));
  auto h = Continuation::tabulate(bool_type(), [&](const Value& v) { return b.pure(Value::boolean(!v.as_bool())); });
  auto nested = b.bind(b.bind(x, k), h);
  auto flat = b.bind(x, [&](const Value& v) { return b.bind(k(v), h); });
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::MonadAssoc, Judgment::equiv(nested, flat))));
}

TEST(Check, FunctorSelectAndPlusRules) {
  TermBuilder b(full_vocabulary());
  auto x = get(b, "x"), y = get(b, "y"), z = get(b, "z");
  auto stream = theory_of({TheoryId::Streamingly});
  EXPECT_TRUE(check_derivation(
      stream, Derivation::make(RuleId::FunctorId, Judgment::equiv(b.fmap(fns::identity(bool_type()), x), x))));
  auto twice = b.fmap(fns::negb(), b.fmap(fns::negb(), x));
  EXPECT_TRUE(check_derivation(
      stream, Derivation::make(RuleId::FunctorComp,
                               Judgment::equiv(twice, b.fmap(fns::identity(bool_type()), x)))));

  auto sum = FiniteType::either(bool_type(), bool_type());
  auto handler = FiniteType::function(bool_type(), bool_type());
  auto sel = b.select(b.fmap(fns::inr(bool_type(), bool_type()), x), b.pure(handler->carrier()[0], handler));
  EXPECT_TRUE(same_type(sel->get<SelectByNode>().a->type(), sum));
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::Conditionally}),
                               Derivation::make(RuleId::SelectInr, Judgment::equiv(sel, x))));

  auto nd = theory_of({TheoryId::Nondeterministically});
  EXPECT_TRUE(check_derivation(nd, Derivation::make(RuleId::PlusComm, Judgment::equiv(b.plus(x, y), b.plus(y, x)))));
  EXPECT_TRUE(check_derivation(nd, Derivation::make(RuleId::PlusAssoc, Judgment::equiv(b.plus(x, b.plus(y, z)),
                                                                                       b.plus(b.plus(x, y), z)))));
  EXPECT_TRUE(check_derivation(nd, Derivation::make(RuleId::LeftPlus, Judgment::refine(x, b.plus(x, y)))));
  EXPECT_TRUE(check_derivation(nd, Derivation::make(RuleId::RightPlus, Judgment::refine(y, b.plus(x, y)))));
  EXPECT_FALSE(check_derivation(nd, Derivation::make(RuleId::LeftPlus, Judgment::equiv(x, b.plus(x, y)))));
  auto lub = Derivation::make(RuleId::PlusLub, Judgment::refine(b.plus(y, x), b.plus(x, y)),
                              {Derivation::make(RuleId::RightPlus, Judgment::refine(y, b.plus(x, y))),
                               Derivation::make(RuleId::LeftPlus, Judgment::refine(x, b.plus(x, y)))});
  EXPECT_TRUE(check_derivation(nd, lub));
}

TEST(Check, RepeatAndKPlus) {
  TermBuilder b(full_vocabulary());
  auto th = theory_of({TheoryId::Repeatedly});
  auto x = get(b, "x");
  auto kx = b.kplus(x);
  for (std::uint64_t n = 0; n < 4; ++n) {
    auto d = Derivation::make(RuleId::Repeat, Judgment::refine(repeat_term(b, x, n), kx), {}, n);
    EXPECT_TRUE(check_derivation(th, d)) << n;
    auto off = Derivation::make(RuleId::Repeat, Judgment::refine(repeat_term(b, x, n), kx), {}, n + 1);
    EXPECT_FALSE(check_derivation(th, off));
  }
  TermBuilder mb(Vocabulary({KindTag::Pure, KindTag::Bind, KindTag::KPlus}, {data_effect()}));
  auto mx = get(mb, "x");
  EXPECT_EQ(repeat_term(mb, mx, 2)->tag(), KindTag::Bind);
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::Repeat, Judgment::refine(repeat_term(mb, mx, 2), mb.kplus(mx)), {}, 2)));
  auto inner = Derivation::make(RuleId::Repeat, Judgment::refine(x, kx), {}, 0);
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::KPlus, Judgment::refine(kx, kx), {inner})));
  // Refinement is not available without an add-on.
  EXPECT_EQ(check_derivation(theory_of({TheoryId::Statically}), Derivation::make(RuleId::Refl, Judgment::refine(x, x))).code,
            ErrorCode::RuleNotInTheory);
}

TEST(Check, PromotionAndNoSymmetryForRefinement) {
  TermBuilder b(full_vocabulary());
  auto th = theory_of({TheoryId::Nondeterministically});
  auto x = get(b, "x"), y = get(b, "y");
  auto comm = Derivation::make(RuleId::PlusComm, Judgment::equiv(b.plus(x, y), b.plus(y, x)));
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::Promote, Judgment::refine(b.plus(x, y), b.plus(y, x)), {comm})));
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::Promote, Judgment::refine(b.plus(y, x), b.plus(x, y)), {comm})));
  auto lp = Derivation::make(RuleId::LeftPlus, Judgment::refine(x, b.plus(x, y)));
  EXPECT_FALSE(check_derivation(th, Derivation::make(RuleId::Sym, Judgment::refine(b.plus(x, y), x), {lp})));
}

TEST(Prove, RightIdentityWithinThree) {
  auto b = app_builder();
  auto x = get(b, "x");
  auto th = theory_of({TheoryId::Statically});
  auto d = prove_bounded(th, b, Judgment::equiv(x, b.lift_a2(fns::andb(), x, tru(b))), 3);
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(th, *d));
}

TEST(Prove, CommutativityWithinTwo) {
  auto b = app_builder();
  auto t = get(b, "x"), u = get(b, "y");
  auto j = Judgment::equiv(b.lift_a2(fns::andb(), t, u), b.lift_a2(fns::andb(), u, t));
  auto d = prove_bounded(theory_of({TheoryId::StaticallyInParallel}), b, j, 2);
  ASSERT_TRUE(d);
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::StaticallyInParallel}), *d));
  EXPECT_FALSE(prove_bounded(theory_of({TheoryId::Statically}), b, j, 6));
}

TEST(Prove, DuplicatedReadIsNotProvable) {
  auto b = app_builder();
  auto x = get(b, "x");
  EXPECT_FALSE(prove_bounded(theory_of({TheoryId::Statically}), b, Judgment::equiv(x, b.lift_a2(fns::andb(), x, x)), 6));
}

TEST(Prove, RefinementSearch) {
  TermBuilder b(full_vocabulary());
  auto th = theory_of({TheoryId::Repeatedly, TheoryId::Nondeterministically});
  auto x = get(b, "x"), y = get(b, "y");
  auto goals = {Judgment::refine(x, b.plus(y, x)), Judgment::refine(b.plus(y, x), b.plus(x, y)),
                Judgment::refine(repeat_term(b, x, 2), b.kplus(x)), Judgment::refine(x, b.kplus(b.plus(x, y))),
                Judgment::refine(b.kplus(x), b.kplus(b.plus(x, y)))};
  for (const auto& j : goals) {
    auto d = prove_bounded(th, b, j, 4);
    ASSERT_TRUE(d) << adverbs::to_sexpr(j.lhs) << " <= " << adverbs::to_sexpr(j.rhs);
    EXPECT_TRUE(check_derivation(th, *d));
  }
}

TEST(Prove, ResultsAlwaysCheck) {
  TermBuilder b(full_vocabulary());
  RandomTerms gen(b, 21);
  auto th = theory_of({TheoryId::StaticallyInParallel, TheoryId::Dynamically, TheoryId::Streamingly,
                       TheoryId::Nondeterministically, TheoryId::Repeatedly});
  int found = 0;
  for (int i = 0; i < 150; ++i) {
    auto l = gen.gen(2), r = gen.gen(2);
    for (auto rel : {Relation::Equiv, Relation::Refine}) {
      auto d = prove_bounded(th, b, Judgment{rel, l, r}, 3);
      if (!d) continue;
      ++found;
      EXPECT_TRUE(check_derivation(th, *d));
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Prove, EquivalenceComposes) {
  auto b = app_builder();
  auto th = theory_of({TheoryId::StaticallyInParallel});
  auto x = get(b, "x"), y = get(b, "y");
  auto p = b.lift_a2(fns::andb(), x, y);
  auto q = b.lift_a2(fns::andb(), y, x);
  auto r = b.lift_a2(fns::andb(), b.lift_a2(fns::andb(), y, x), tru(b));
  auto pq = prove_bounded(th, b, Judgment::equiv(p, q), 2);
  auto qr = prove_bounded(th, b, Judgment::equiv(q, r), 2);
  ASSERT_TRUE(pq && qr);
  auto pr = Derivation::make(RuleId::Trans, Judgment::equiv(p, r), {*pq, *qr});
  EXPECT_TRUE(check_derivation(th, pr));
  EXPECT_TRUE(check_derivation(th, Derivation::make(RuleId::Sym, Judgment::equiv(r, p), {pr})));
}

TEST(DerivationText, RoundTrip) {
  ReadContext ctx{app_builder()};
  auto th = theory_of({TheoryId::StaticallyInParallel});
  auto x = get(ctx.builder, "x"), y = get(ctx.builder, "y");
  auto j = Judgment::equiv(ctx.builder.lift_a2(fns::andb(), ctx.builder.lift_a2(fns::andb(), x, tru(ctx.builder)), y),
                           ctx.builder.lift_a2(fns::andb(), y, x));
  auto d = prove_bounded(th, ctx.builder, j, 4);
  ASSERT_TRUE(d);
  auto text = to_sexpr(*d);
  auto back = read_derivation(text, ctx);
  EXPECT_EQ(to_sexpr(back), text);
  EXPECT_TRUE(check_derivation(th, back));
}
