#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace adverbs::theory {

enum class TheoryId {
  Streamingly,
  Statically,
  StaticallyInParallel,
  Conditionally,
  Dynamically,
  Repeatedly,
  Nondeterministically,
};

enum class RuleId {
  Refl,
  Sym,
  Trans,
  CongFMap,
  CongLiftA2,
  CongSelectBy,
  CongBind,
  CongKPlus,
  CongPlus,
  AppLeftId,
  AppRightId,
  AppAssoc,
  AppNaturality,
  AppComm,
  MonadLeftId,
  MonadRightId,
  MonadAssoc,
  FunctorId,
  FunctorComp,
  SelectInr,
  Repeat,
  KPlus,
  PlusComm,
  PlusAssoc,
  PlusLub,
  LeftPlus,
  RightPlus,
  /// a ≅ b entails a ⊑ b and b ⊑ a.
  Promote,
};

enum class Relation { Equiv, Refine };

std::string_view to_string(TheoryId id);
std::string_view to_string(RuleId id);
std::string_view to_string(Relation r);
std::optional<TheoryId> theory_from_string(std::string_view s);
std::optional<RuleId> rule_from_string(std::string_view s);

/// A union of adverb theories: the rule schemas of every member, and the
/// refinement relation whenever an add-on adverb is present.
struct Theory {
  std::set<TheoryId> ids;
  std::set<RuleId> rules;
  std::set<Relation> relations;

  bool has(RuleId r) const { return rules.count(r) != 0; }
  bool has(Relation r) const { return relations.count(r) != 0; }
  std::string name() const;

  friend bool operator==(const Theory&, const Theory&) = default;
};

/// Throws InvalidArgument on an empty set.
Theory theory_of(const std::set<TheoryId>& ids);
Theory theory_union(const Theory& a, const Theory& b);

}  // namespace adverbs::theory
