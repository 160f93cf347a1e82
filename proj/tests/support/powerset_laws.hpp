#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "adverbs/term.hpp"

namespace adverbs::testing {

struct LawTally {
  std::size_t instances = 0, failures = 0;
  std::string first_failure;
};

/// Congruence, left identity, right identity and commutativity of liftA2 in
/// the both-orders interpretation, each on `samples` random instances.
std::map<std::string, LawTally> powerset_laws(std::size_t samples, unsigned seed);

/// liftA2 f (liftA2 f a b) c against liftA2 f a (liftA2 f b c) for an
/// associative f and three distinct reads, in enumeration order. Returns the
/// first pair the both-orders interpretation tells apart.
std::optional<std::pair<TermRef, TermRef>> associativity_counterexample();

}  // namespace adverbs::testing
