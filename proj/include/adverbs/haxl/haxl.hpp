#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adverbs/fold.hpp"
#include "adverbs/semantics/domains.hpp"

namespace adverbs::haxl {

/// The immutable key-value database a fetch program reads from.
using Db = sem::Env;

struct CostReport {
  Value result;
  /// Database rounds: Bind adds, LiftA2 takes the max.
  std::uint64_t rounds = 0;
  /// Total requests: added under both Bind and LiftA2.
  std::uint64_t requests = 0;
  bool operator==(const CostReport&) const = default;
};

using CostFn = std::function<CostReport(const Db&)>;
using CostAlgebra = Algebra<CostFn>;

/// The interpretation of one adverb or effect into the cost domain. Only the
/// case(s) for its own kind are set.
struct Instance {
  std::string name;
  CostAlgebra cases;
};
using InstanceRef = std::shared_ptr<const Instance>;

Instance cost_pure();
/// Batched: rounds are max'ed.
Instance cost_app();
/// liftA2 as derived from bind: rounds add up.
Instance cost_app_sequential();
Instance cost_monad();
/// GetData(v) reads db[v] at one round and one request.
Instance cost_data();
/// An effect whose operations all cost `cost` rounds and requests and
/// return the unit value, or the first carrier element of their result type.
Instance constant_cost_effect(const std::string& sig, std::uint64_t cost);

/// The fetch-data effect over the given keys, with results drawn from `values`.
EffectRef data_effect(const std::vector<std::string>& keys, const TypeRef& values);

/// A vocabulary together with one instance per kind; the algebra for a whole
/// program is the sum of the instances.
class Analyzer {
 public:
  /// {Pure, LiftA2, Bind, DataEff} with the batched LiftA2.
  static Analyzer standard(const EffectRef& data);

  /// Registers `sig` and its algebra. Existing table entries are shared,
  /// not copied. Throws DuplicateEffectName if the name is taken.
  Analyzer extend_with_effect(const EffectRef& sig, Instance inst) const;
  /// The same analyzer with LiftA2 replaced by its bind-derived version.
  Analyzer sequentialized() const;

  const Vocabulary& vocabulary() const { return vocab_; }
  TermBuilder builder() const { return TermBuilder(vocab_); }
  const std::map<NodeKind, InstanceRef>& table() const { return table_; }

  /// Throws UnboundVar when a read misses the database.
  CostReport analyze(const TermRef& program, const Db& db) const;

 private:
  CostAlgebra assemble() const;

  Vocabulary vocab_;
  std::map<NodeKind, InstanceRef> table_;
};

/// The three reference programs over keys x and y: two sequential reads, two
/// batched reads, and a pure value.
struct Fixture {
  std::string name;
  TermRef program;
  std::uint64_t expected_rounds;
};
std::vector<Fixture> fixtures(const TermBuilder& b);

}  // namespace adverbs::haxl
