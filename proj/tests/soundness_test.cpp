#include <gtest/gtest.h>

#include <random>

#include "adverbs/semantics/traces.hpp"
#include "adverbs/term_io.hpp"
#include "adverbs/theory/derivation.hpp"
#include "support/random_terms.hpp"
#include "support/powerset_laws.hpp"
#include "support/soundness.hpp"

using namespace adverbs;
using namespace adverbs::theory;
using adverbs::testing::data_effect;
using adverbs::testing::RandomTerms;
using adverbs::testing::run_soundness;

namespace {

class Soundness : public ::testing::TestWithParam<TheoryId> {};

}  // namespace

TEST_P(Soundness, AcceptedDerivationsHoldInTheOracle) {
  auto t = run_soundness(GetParam(), 1000, 31 + static_cast<unsigned>(GetParam()));
  EXPECT_EQ(t.accepted, 1000u);
  EXPECT_EQ(t.rejected, 0u) << t.first_rejection;
  EXPECT_EQ(t.unsound, 0u) << t.first_unsound;
}

INSTANTIATE_TEST_SUITE_P(AllTheories, Soundness,
                         ::testing::Values(TheoryId::Streamingly, TheoryId::Statically,
                                           TheoryId::StaticallyInParallel, TheoryId::Conditionally,
                                           TheoryId::Dynamically, TheoryId::Repeatedly,
                                           TheoryId::Nondeterministically),
                         [](const auto& info) { return std::string(to_string(info.param)); });

namespace {
TermBuilder app() { return TermBuilder(Vocabulary({KindTag::Pure, KindTag::LiftA2}, {data_effect()})); }
TermRef get(const TermBuilder& b, const char* v) { return b.effect("DataEff", "GetData", {Value::symbol(v)}); }
}  // namespace

TEST(PowerSet, CommutationNeedsBothOrders) {
  auto b = app();
  auto x = get(b, "x"), y = get(b, "y");
  auto l = b.lift_a2(fns::andb(), x, y), r = b.lift_a2(fns::andb(), y, x);
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::StaticallyInParallel}),
                               Derivation::make(RuleId::AppComm, Judgment::equiv(l, r))));
  sem::OutcomeModel m;
  EXPECT_EQ(sem::powerset_interpret(l, m, 1), sem::powerset_interpret(r, m, 1));
  EXPECT_NE(sem::trace_sem(l, m, 1), sem::trace_sem(r, m, 1));
}

TEST(PowerSet, AssociativityFailsWithBothOrders) {
  auto b = app();
  auto x = get(b, "x"), y = get(b, "y"), z = get(b, "z");
  auto l = b.lift_a2(fns::andb(), b.lift_a2(fns::andb(), x, y), z);
  auto r = b.lift_a2(fns::andb(), x, b.lift_a2(fns::andb(), y, z));
  EXPECT_TRUE(check_derivation(theory_of({TheoryId::Statically}),
                               Derivation::make(RuleId::AppNaturality, Judgment::equiv(l, r))));
  EXPECT_FALSE(check_derivation(theory_of({TheoryId::StaticallyInParallel}),
                                Derivation::make(RuleId::AppNaturality, Judgment::equiv(l, r))));
  sem::OutcomeModel m;
  EXPECT_EQ(sem::trace_sem(l, m, 1), sem::trace_sem(r, m, 1));
  auto pl = sem::powerset_interpret(l, m, 1), pr = sem::powerset_interpret(r, m, 1);
  EXPECT_NE(pl, pr);
  // With both orders, z runs first or last on the left and x does on the right.
  auto position_of_z = [](const sem::TraceSet& ts) {
    std::set<std::size_t> at;
    for (const auto& bh : ts.behaviors)
      for (std::size_t i = 0; i < bh.trace.size(); ++i)
        if (bh.trace[i].args[0] == Value::symbol("z")) at.insert(i);
    return at;
  };
  EXPECT_EQ(position_of_z(pl), (std::set<std::size_t>{0, 2}));
  EXPECT_EQ(position_of_z(pr), (std::set<std::size_t>{0, 1, 2}));
}

TEST(PowerSet, LiftA2CommutesOnRandomTerms) {
  auto b = app();
  RandomTerms gen(b, 77);
  sem::OutcomeModel m;
  for (int i = 0; i < 300; ++i) {
    auto x = gen.gen(2), y = gen.gen(2);
    auto f = fns::orb();
    ASSERT_EQ(sem::powerset_interpret(b.lift_a2(f, x, y), m, 1),
              sem::powerset_interpret(b.lift_a2(fns::flip(f), y, x), m, 1));
  }
}

TEST(PowerSet, LawsOnRandomInstances) {
  auto laws = adverbs::testing::powerset_laws(500, 5);
  ASSERT_EQ(laws.size(), 4u);
  for (const auto& [law, t] : laws) {
    EXPECT_EQ(t.instances, 500u) << law;
    EXPECT_EQ(t.failures, 0u) << law << ": " << t.first_failure;
  }
}

TEST(PowerSet, AssociativityCounterexampleByEnumeration) {
  auto found = adverbs::testing::associativity_counterexample();
  ASSERT_TRUE(found.has_value());
  // The same pair is equal under the one-order interpretation.
  sem::OutcomeModel m;
  EXPECT_EQ(sem::trace_sem(found->first, m, 1), sem::trace_sem(found->second, m, 1));
}
