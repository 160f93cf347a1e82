#include <gtest/gtest.h>

#include <random>

#include "adverbs/semantics/domains.hpp"
#include "adverbs/semantics/traces.hpp"
#include "adverbs/theory/derivation.hpp"
#include "support/random_terms.hpp"

using namespace adverbs;
using namespace adverbs::sem;
using adverbs::testing::data_effect;
using adverbs::testing::full_vocabulary;
using adverbs::testing::RandomTerms;

namespace {

TermRef get(const TermBuilder& b, const char* v) { return b.effect("DataEff", "GetData", {Value::symbol(v)}); }
Value T() { return Value::boolean(true); }
Value F() { return Value::boolean(false); }
Event read(const char* v, bool outcome) { return Event{"DataEff", "GetData", {Value::symbol(v)}, Value::boolean(outcome)}; }

}  // namespace

TEST(Reader, ConjunctionWithTrue) {
  TermBuilder b(full_vocabulary());
  auto t = b.lift_a2(fns::andb(), get(b, "x"), b.pure(T()));
  Env env{{"x", T()}};
  // By hand: ask x = true, true && true = true.
  EXPECT_EQ(run_reader(t, env), T());
  EXPECT_EQ(run_reader(t, Env{{"x", F()}}), F());
}

TEST(Reader, PureIgnoresEnvironment) {
  TermBuilder b(full_vocabulary());
  EXPECT_EQ(run_reader(b.pure(Value::nat(3)), {}), Value::nat(3));
}

TEST(Reader, BindThreadsEnvironment) {
  TermBuilder b(full_vocabulary());
  auto t = b.bind(get(b, "x"), [&](const Value& v) { return v.as_bool() ? get(b, "y") : get(b, "z"); });
  EXPECT_EQ(run_reader(t, {{"x", T()}, {"y", F()}, {"z", T()}}), F());
  EXPECT_EQ(run_reader(t, {{"x", F()}, {"y", F()}, {"z", T()}}), T());
}

TEST(Reader, UnboundVariable) {
  TermBuilder b(full_vocabulary());
  try {
    run_reader(get(b, "y"), {{"x", T()}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVar);
  }
}

TEST(Reader, MissingCaseForPlus) {
  TermBuilder b(full_vocabulary());
  auto t = b.plus(b.pure(T()), b.pure(F()));
  try {
    run_reader(t, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingAlgebraCase);
  }
}

TEST(Update, CostsFollowTheDomain) {
  TermBuilder b(full_vocabulary());
  Env env{{"x", T()}, {"y", F()}};
  auto d = update_domain();
  auto seq = b.bind(get(b, "x"), [&](const Value&) { return get(b, "y"); });
  auto par = b.lift_a2(fns::pair(bool_type(), bool_type()), get(b, "x"), get(b, "y"));
  EXPECT_EQ(interpret(seq, d)(env).cost, 1u + 1u);
  EXPECT_EQ(interpret(par, d)(env).cost, std::max(1u, 1u));
  EXPECT_EQ(interpret(par, d)(env).value, Value::pair(T(), F()));
  EXPECT_EQ(interpret(b.pure(T()), d)(env).cost, 0u);
}

TEST(Update, LiftA2IsNotTheBindDerivedDefault) {
  TermBuilder b(full_vocabulary());
  Env env{{"x", T()}, {"y", F()}};
  auto par = b.lift_a2(fns::andb(), get(b, "x"), get(b, "y"));
  auto d = update_domain();
  auto seq = d;
  seq.algebra.lift_a2 = update::sequential_lift_a2_case().lift_a2;
  EXPECT_NE(interpret(par, d)(env).cost, interpret(par, seq)(env).cost);
  EXPECT_EQ(interpret(par, d)(env).value, interpret(par, seq)(env).value);
}

TEST(Traces, SingleEffect) {
  TermBuilder b(full_vocabulary());
  OutcomeModel m;
  auto ts = trace_sem(get(b, "x"), m, 1);
  TraceSet expected;
  for (bool o : {true, false}) expected.behaviors.insert(Behavior{{read("x", o)}, Value::boolean(o)});
  EXPECT_EQ(ts, expected);
}

TEST(Traces, OutcomeRestriction) {
  TermBuilder b(full_vocabulary());
  OutcomeModel m;
  m.outcomes["DataEff.GetData"] = {T()};
  EXPECT_EQ(trace_sem(get(b, "x"), m, 1).size(), 1u);
}

TEST(Traces, PlusIsUnion) {
  TermBuilder b(full_vocabulary());
  RandomTerms gen(b, 31);
  OutcomeModel m;
  for (int i = 0; i < 100; ++i) {
    auto x = gen.gen(2), y = gen.gen(2);
    EXPECT_EQ(trace_sem(b.plus(x, y), m, 2), set_union(trace_sem(x, m, 2), trace_sem(y, m, 2)));
    EXPECT_EQ(powerset_interpret(b.plus(x, y), m, 2),
              set_union(powerset_interpret(x, m, 2), powerset_interpret(y, m, 2)));
  }
}

TEST(Traces, KPlusUnrollsUpToBound) {
  TermBuilder b(full_vocabulary());
  OutcomeModel m;
  auto a = b.lift_a2(fns::orb(), get(b, "x"), get(b, "y"));
  auto twice = b.lift_a2(fns::second(bool_type(), bool_type()), a, a);
  EXPECT_EQ(trace_sem(b.kplus(a), m, 2), set_union(trace_sem(a, m, 1), trace_sem(twice, m, 1)));
}

TEST(Traces, MonotoneInBound) {
  TermBuilder b(full_vocabulary());
  RandomTerms gen(b, 32);
  OutcomeModel m;
  for (int i = 0; i < 60; ++i) {
    auto t = gen.gen(3);
    auto small = trace_sem(t, m, 1), big = trace_sem(t, m, 2);
    EXPECT_TRUE(big.includes(small));
  }
}

TEST(Powerset, BothOrdersOfLiftA2) {
  TermBuilder b(full_vocabulary());
  OutcomeModel m;
  m.outcomes["DataEff.GetData"] = {T()};
  auto t = b.lift_a2(fns::pair(bool_type(), bool_type()), get(b, "x"), get(b, "y"));
  auto ps = powerset_interpret(t, m, 1);
  EXPECT_TRUE(ps.contains(Behavior{{read("x", true), read("y", true)}, Value::pair(T(), T())}));
  EXPECT_TRUE(ps.contains(Behavior{{read("y", true), read("x", true)}, Value::pair(T(), T())}));
  EXPECT_EQ(ps.size(), 2u);
  EXPECT_EQ(trace_sem(t, m, 1).size(), 1u);
}

TEST(Powerset, PureIsSingleton) {
  TermBuilder b(full_vocabulary());
  auto ps = powerset_interpret(b.pure(T()), OutcomeModel{}, 1);
  TraceSet expected;
  expected.behaviors.insert(Behavior{{}, T()});
  EXPECT_EQ(ps, expected);
}

TEST(Powerset, AgreesWithTracesWithoutLiftA2) {
  TermBuilder b(Vocabulary({KindTag::Pure, KindTag::FMap, KindTag::Bind, KindTag::Plus}, {data_effect()}));
  RandomTerms gen(b, 33);
  OutcomeModel m;
  for (int i = 0; i < 100; ++i) {
    auto t = gen.gen(3);
    EXPECT_EQ(powerset_interpret(t, m, 2), trace_sem(t, m, 2));
  }
}

TEST(Powerset, SetSemanticsAgreesWithPathExploration) {
  TermBuilder b(adverbs::testing::full_vocabulary());
  RandomTerms gen(b, 35);
  OutcomeModel m;
  for (int i = 0; i < 200; ++i) {
    auto t = gen.gen(3);
    for (auto order : {Order::Sequential, Order::BothOrders}) {
      TraceSet paths;
      explore(t, m, {order, 2}, [&](const Behavior& bh) {
        paths.behaviors.insert(bh);
        return true;
      });
      EXPECT_EQ(order == Order::Sequential ? trace_sem(t, m, 2) : powerset_interpret(t, m, 2), paths);
    }
  }
}

TEST(Oracle, CommutedConjunction) {
  TermBuilder b(full_vocabulary());
  auto t = get(b, "x"), u = get(b, "y");
  OutcomeModel m;
  EXPECT_TRUE(oracle_equiv(b.lift_a2(fns::andb(), t, u), b.lift_a2(fns::andb(), u, t), m, 1));
  EXPECT_NE(trace_sem(b.lift_a2(fns::andb(), t, u), m, 1), trace_sem(b.lift_a2(fns::andb(), u, t), m, 1));
}

TEST(Oracle, DuplicatedReadDiffers) {
  TermBuilder b(full_vocabulary());
  auto x = get(b, "x");
  EXPECT_FALSE(oracle_equiv(x, b.lift_a2(fns::andb(), x, x), OutcomeModel{}, 1));
}

TEST(Oracle, LeftPlusRefines) {
  TermBuilder b(full_vocabulary());
  auto x = get(b, "x"), y = get(b, "y");
  OutcomeModel m;
  auto r = oracle_refines(x, b.plus(x, y), m, 1, 1);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.behaviors_checked, 2u);
  auto back = oracle_refines(b.plus(x, y), x, m, 1, 1);
  EXPECT_FALSE(back.holds);
  ASSERT_TRUE(back.witness);
  EXPECT_EQ(back.witness->trace.front().args.front(), Value::symbol("y"));
}

TEST(Oracle, MembershipAgreesWithEnumeration) {
  TermBuilder b(full_vocabulary());
  RandomTerms gen(b, 34);
  OutcomeModel m;
  for (int i = 0; i < 80; ++i) {
    auto x = gen.gen(3), y = gen.gen(3);
    auto sx = trace_sem(x, m, 2), sy = trace_sem(y, m, 2);
    EXPECT_EQ(oracle_refines(x, y, m, 2, 2).holds, sy.includes(sx));
    for (const auto& beh : sx.behaviors) EXPECT_TRUE(can_exhibit(x, m, {Order::Sequential, 2}, beh));
  }
}

TEST(Oracle, StoreHandlersStayOutOfTraces) {
  auto mem = EffectSig::make("MemoryEff", {OpSig{"get", {enum_type("ref", {"r"})}, nat_type(3), {}},
                                           OpSig{"set", {enum_type("ref", {"r"}), nat_type(3)}, unit_type(), {}}});
  TermBuilder b(Vocabulary({KindTag::Pure, KindTag::Bind}, {mem}));
  OutcomeModel m;
  m.initial[Value::symbol("r")] = Value::nat(1);
  m.handlers["MemoryEff"] = [](const EffectNode& e, const Store& s) -> std::optional<StoreStep> {
    if (e.op == "get") return StoreStep{s.at(e.args[0]), s};
    Store s2 = s;
    s2[e.args[0]] = e.args[1];
    return StoreStep{Value::unit(), s2};
  };
  auto t = b.bind(b.effect("MemoryEff", "set", {Value::symbol("r"), Value::nat(2)}),
                  [&](const Value&) { return b.effect("MemoryEff", "get", {Value::symbol("r")}); });
  auto ts = trace_sem(t, m, 1);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(*ts.behaviors.begin(), (Behavior{{}, Value::nat(2)}));
}

TEST(TraceText, SortedLines) {
  TermBuilder b(full_vocabulary());
  auto text = trace_sem(get(b, "x"), OutcomeModel{}, 1).to_text();
  EXPECT_EQ(text, "[DataEff.GetData x -> false] => false\n[DataEff.GetData x -> true] => true\n");
}
