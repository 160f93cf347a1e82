#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "adverbs/fold.hpp"

namespace adverbs::sem {

/// Variable environment for effects that read named data.
using Env = std::map<std::string, Value>;

/// An interpretation target: a per-kind algebra plus equality on results.
template <class D>
struct SemanticDomain {
  Algebra<D> algebra;
  std::function<bool(const D&, const D&)> equal;
};

template <class D>
D interpret(const TermRef& t, const SemanticDomain<D>& d) {
  return fold(t, d.algebra);
}

/// Reader: a computation is a function of the environment. Effects of
/// `read_effect` look up their first argument (a symbol) in the environment.
using ReaderFn = std::function<Value(const Env&)>;
SemanticDomain<ReaderFn> reader_domain(const std::string& read_effect = "DataEff");
Value run_reader(const TermRef& t, const Env& env, const std::string& read_effect = "DataEff");

/// Update: a computation yields its value and a cost. Pure costs 0, Bind
/// adds, LiftA2 takes the max, each read costs 1.
struct Costed {
  Value value;
  std::uint64_t cost = 0;
  bool operator==(const Costed&) const = default;
};
using UpdateFn = std::function<Costed(const Env&)>;

/// The individual Update cases, so analyzers can assemble them piecemeal.
namespace update {
Algebra<UpdateFn> pure_case();
Algebra<UpdateFn> fmap_case();
Algebra<UpdateFn> lift_a2_case();
/// liftA2 derived from bind: costs add instead of taking the max.
Algebra<UpdateFn> sequential_lift_a2_case();
Algebra<UpdateFn> bind_case();
/// A read of the environment at the first argument, with the given cost.
Algebra<UpdateFn>::EffectCase read_case(std::uint64_t cost = 1);
}  // namespace update

SemanticDomain<UpdateFn> update_domain(const std::string& read_effect = "DataEff");

}  // namespace adverbs::sem
