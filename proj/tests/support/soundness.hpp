#pragma once

#include <string>

#include "adverbs/theory/theory.hpp"
#include "adverbs/vocabulary.hpp"

namespace adverbs::testing {

/// The kinds each theory talks about, over the test DataEff signature.
Vocabulary vocabulary_for(theory::TheoryId id);

struct Tally {
  std::size_t accepted = 0, rejected = 0, unsound = 0;
  std::string first_rejection, first_unsound;
};

/// Generates random derivations in one theory until `want` are accepted (or
/// as many are rejected) and checks each accepted conclusion in the oracle.
Tally run_soundness(theory::TheoryId id, std::size_t want, unsigned seed);

}  // namespace adverbs::testing
