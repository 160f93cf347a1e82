#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adverbs/error.hpp"
#include "adverbs/term.hpp"
#include "adverbs/theory/theory.hpp"

namespace adverbs::theory {

struct Judgment {
  Relation rel = Relation::Equiv;
  TermRef lhs, rhs;

  static Judgment equiv(TermRef l, TermRef r) { return {Relation::Equiv, std::move(l), std::move(r)}; }
  static Judgment refine(TermRef l, TermRef r) { return {Relation::Refine, std::move(l), std::move(r)}; }
};

struct Derivation;
using DerivationRef = std::shared_ptr<const Derivation>;

/// A proof tree. Metavariables of the rule are read off the conclusion's
/// terms, so the only explicit instantiation is the repetition count of
/// Repeat. Subtrees may be shared.
struct Derivation {
  RuleId rule;
  Judgment conclusion;
  std::vector<DerivationRef> premises;
  std::uint64_t count = 0;

  static DerivationRef make(RuleId rule, Judgment j, std::vector<DerivationRef> premises = {},
                            std::uint64_t count = 0);
};

struct Verdict {
  bool accepted = true;
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string reason;

  static Verdict ok() { return {}; }
  static Verdict reject(ErrorCode c, std::string why) { return {false, c, std::move(why)}; }
  explicit operator bool() const { return accepted; }
};

/// Checks one node, assuming its premises are accepted.
Verdict check_step(const Theory& th, const Derivation& d);
/// Checks every node. Shared subtrees are checked once.
Verdict check_derivation(const Theory& th, const DerivationRef& d);

/// repeat a 0 = a; repeat a (n+1) sequences a before repeat a n, through
/// LiftA2 (fun _ x => x) when the builder has LiftA2, else through Bind
/// with a constant continuation.
TermRef repeat_term(const TermBuilder& b, const TermRef& a, std::uint64_t n);

/// Bounded search. A result is always accepted by check_derivation; None
/// means the budget ran out, not that the judgment is false.
std::optional<DerivationRef> prove_bounded(const Theory& th, const TermBuilder& b, const Judgment& j,
                                           unsigned depth);

std::size_t derivation_size(const DerivationRef& d);

}  // namespace adverbs::theory
