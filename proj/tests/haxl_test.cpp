#include <gtest/gtest.h>

#include <random>

#include "adverbs/haxl/haxl.hpp"

using namespace adverbs;
using namespace adverbs::haxl;

namespace {

TypeRef vals() { return nat_type(3); }

Analyzer analyzer() { return Analyzer::standard(data_effect({"x", "y", "z"}, vals())); }

Db db() { return {{"x", Value::nat(3)}, {"y", Value::nat(1)}, {"z", Value::nat(2)}}; }

// Direct recursion over the term, following the cost equations by hand.
CostReport oracle(const TermRef& t, const Db& d, bool batched = true) {
  switch (t->tag()) {
    case KindTag::Pure: return {t->get<PureNode>().value, 0, 0};
    case KindTag::Effect: {
      const auto& e = t->get<EffectNode>();
      if (e.sig->name() != "DataEff") return {Value::unit(), 0, 0};
      return {d.at(e.args[0].as_symbol()), 1, 1};
    }
    case KindTag::LiftA2: {
      const auto& n = t->get<LiftA2Node>();
      auto a = oracle(n.a, d, batched), b = oracle(n.b, d, batched);
      return {(*n.f)(a.result, b.result), batched ? std::max(a.rounds, b.rounds) : a.rounds + b.rounds,
              a.requests + b.requests};
    }
    case KindTag::Bind: {
      const auto& n = t->get<BindNode>();
      auto a = oracle(n.m, d, batched);
      auto b = oracle(n.k(a.result), d, batched);
      return {b.result, a.rounds + b.rounds, a.requests + b.requests};
    }
    default: throw std::logic_error("unexpected kind");
  }
}

class RandomPrograms {
 public:
  RandomPrograms(const TermBuilder& b, unsigned seed) : b_(b), rng_(seed) {}

  TermRef gen(int depth) {
    switch (depth == 0 ? pick(2) : pick(4)) {
      case 0: return b_.pure(Value::nat(pick(4)), vals());
      case 1: return b_.effect("DataEff", "GetData", {Value::symbol(std::string(1, "xyz"[pick(3)]))});
      case 2: {
        FnRef fs[] = {fns::first(vals(), vals()), fns::second(vals(), vals())};
        return b_.lift_a2(fs[pick(2)], gen(depth - 1), gen(depth - 1));
      }
      default: {
        auto m = gen(depth - 1);
        std::vector<TermRef> k;
        for (std::size_t i = 0; i < vals()->size(); ++i) k.push_back(gen(depth - 1));
        return b_.bind(m, Continuation::from_table(vals(), k));
      }
    }
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  const TermBuilder& b_;
  std::mt19937 rng_;
};

}  // namespace

TEST(Haxl, FixtureRounds) {
  auto a = analyzer();
  auto b = a.builder();
  for (const auto& f : fixtures(b)) {
    auto r = a.analyze(f.program, db());
    EXPECT_EQ(r.rounds, f.expected_rounds) << f.name;
    EXPECT_EQ(r, oracle(f.program, db())) << f.name;
  }
}

TEST(Haxl, FixtureValues) {
  auto a = analyzer();
  auto fs = fixtures(a.builder());
  // Sequential: the continuation ignores x and reads y = 1.
  EXPECT_EQ(a.analyze(fs[0].program, db()), (CostReport{Value::nat(1), 2, 2}));
  EXPECT_EQ(a.analyze(fs[1].program, db()), (CostReport{Value::pair(Value::nat(3), Value::nat(1)), 1, 2}));
  EXPECT_EQ(a.analyze(fs[2].program, db()), (CostReport{Value::nat(0), 0, 0}));
}

TEST(Haxl, MissingKeyIsUnbound) {
  auto a = analyzer();
  auto p = a.builder().effect("DataEff", "GetData", {Value::symbol("z")});
  try {
    a.analyze(p, {{"x", Value::nat(0)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVar);
  }
}

TEST(Haxl, ExtendWithZeroCostLogKeepsReports) {
  auto a = analyzer();
  auto log = EffectSig::make("LogEff", {OpSig{"Log", {}, unit_type(), {}}});
  auto ext = a.extend_with_effect(log, constant_cost_effect("LogEff", 0));
  for (const auto& [kind, inst] : a.table()) EXPECT_EQ(ext.table().at(kind), inst) << kind.to_string();
  EXPECT_EQ(ext.vocabulary(), vocab_union(a.vocabulary(), Vocabulary({}, {log})));
  for (const auto& f : fixtures(a.builder()))
    EXPECT_EQ(ext.analyze(f.program, db()), a.analyze(f.program, db())) << f.name;
}

TEST(Haxl, ExtendWithTimer) {
  auto timer = EffectSig::make("TimerEff", {OpSig{"Tick", {}, unit_type(), {}}});
  auto ext = analyzer().extend_with_effect(timer, constant_cost_effect("TimerEff", 1));
  auto b = ext.builder();
  auto x = b.effect("DataEff", "GetData", {Value::symbol("x")});
  auto p = b.bind(x, Continuation::constant(vals(), b.effect("TimerEff", "Tick", {})));
  EXPECT_EQ(ext.analyze(p, db()).rounds, 2u);
}

TEST(Haxl, ReRegisteringDataIsDuplicate) {
  auto a = analyzer();
  try {
    a.extend_with_effect(data_effect({"x"}, vals()), cost_data());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateEffectName);
  }
}

TEST(Haxl, RandomProgramsMatchOracle) {
  auto a = analyzer();
  auto b = a.builder();
  RandomPrograms gen(b, 5);
  for (int i = 0; i < 300; ++i) {
    auto p = gen.gen(4);
    ASSERT_EQ(a.analyze(p, db()), oracle(p, db()));
  }
}

TEST(Haxl, BatchingNeverCostsMore) {
  auto a = analyzer();
  auto seq = a.sequentialized();
  auto b = a.builder();
  RandomPrograms gen(b, 9);
  for (int i = 0; i < 300; ++i) {
    auto p = gen.gen(4);
    auto par = a.analyze(p, db());
    auto s = seq.analyze(p, db());
    ASSERT_LE(par.rounds, s.rounds);
    ASSERT_EQ(s, oracle(p, db(), false));
  }
  auto batched = fixtures(b)[1].program;
  EXPECT_LT(a.analyze(batched, db()).rounds, seq.analyze(batched, db()).rounds);
}

TEST(Haxl, BatchedLiftA2Commutes) {
  auto a = analyzer();
  auto b = a.builder();
  RandomPrograms gen(b, 13);
  for (int i = 0; i < 300; ++i) {
    auto l = gen.gen(3), r = gen.gen(3);
    auto f = fns::pair(vals(), vals());
    auto p = b.lift_a2(f, l, r);
    auto q = b.lift_a2(fns::flip(f), r, l);
    ASSERT_EQ(a.analyze(p, db()), a.analyze(q, db()));
  }
}

TEST(Haxl, ExtensionIsModularOnRandomPrograms) {
  auto a = analyzer();
  auto ext = a.extend_with_effect(EffectSig::make("LogEff", {OpSig{"Log", {}, unit_type(), {}}}),
                                  constant_cost_effect("LogEff", 0));
  auto b = a.builder();
  RandomPrograms gen(b, 17);
  for (int i = 0; i < 300; ++i) {
    auto p = gen.gen(4);
    ASSERT_EQ(ext.analyze(p, db()), a.analyze(p, db()));
  }
}
