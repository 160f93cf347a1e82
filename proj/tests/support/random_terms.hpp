#pragma once

#include <random>
#include <string>
#include <vector>

#include "adverbs/term.hpp"

namespace adverbs::testing {

/// A one-operation effect used by tests: GetData(var) -> bool.
inline EffectRef data_effect(const std::vector<std::string>& vars = {"x", "y", "z"}) {
  return EffectSig::make("DataEff", {OpSig{"GetData", {enum_type("var", vars)}, bool_type(), {}}});
}

inline Vocabulary full_vocabulary() {
  return Vocabulary({KindTag::Pure, KindTag::FMap, KindTag::LiftA2, KindTag::SelectBy, KindTag::Bind,
                     KindTag::KPlus, KindTag::Plus},
                    {data_effect()});
}

/// Random boolean-typed terms over the kinds enabled in `b`'s vocabulary.
class RandomTerms {
 public:
  RandomTerms(const TermBuilder& b, unsigned seed) : b_(b), rng_(seed) {}

  TermRef gen(int depth) {
    std::vector<KindTag> options;
    for (auto k : {KindTag::Pure, KindTag::Effect}) {
      if (k == KindTag::Effect ? b_.vocabulary().effect("DataEff") != nullptr : b_.vocabulary().has(k))
        options.push_back(k);
    }
    if (depth > 0)
      for (auto k : {KindTag::FMap, KindTag::LiftA2, KindTag::Bind, KindTag::KPlus, KindTag::Plus})
        if (b_.vocabulary().has(k)) options.push_back(k);
    switch (options[pick(options.size())]) {
      case KindTag::Pure: return b_.pure(Value::boolean(pick(2) == 1));
      case KindTag::Effect: {
        static const char* vars[] = {"x", "y", "z"};
        return b_.effect("DataEff", "GetData", {Value::symbol(vars[pick(3)])});
      }
      case KindTag::FMap: return b_.fmap(pick(2) ? fns::negb() : fns::identity(bool_type()), gen(depth - 1));
      case KindTag::LiftA2: {
        FnRef fs[] = {fns::andb(), fns::orb(), fns::first(bool_type(), bool_type()),
                      fns::second(bool_type(), bool_type())};
        return b_.lift_a2(fs[pick(4)], gen(depth - 1), gen(depth - 1));
      }
      case KindTag::Bind: {
        auto m = gen(depth - 1);
        auto t = gen(depth - 1);
        auto f = gen(depth - 1);
        return b_.bind(m, Continuation::from_table(bool_type(), {f, t}));
      }
      case KindTag::KPlus: return b_.kplus(gen(depth - 1));
      default: return b_.plus(gen(depth - 1), gen(depth - 1));
    }
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  const TermBuilder& b_;
  std::mt19937 rng_;
};

}  // namespace adverbs::testing
