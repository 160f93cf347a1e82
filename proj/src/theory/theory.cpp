#include "adverbs/theory/theory.hpp"

#include <array>
#include <utility>

#include "adverbs/error.hpp"

namespace adverbs::theory {

namespace {

constexpr std::array<std::pair<TheoryId, std::string_view>, 7> kTheoryNames{{
    {TheoryId::Streamingly, "Streamingly"},
    {TheoryId::Statically, "Statically"},
    {TheoryId::StaticallyInParallel, "StaticallyInParallel"},
    {TheoryId::Conditionally, "Conditionally"},
    {TheoryId::Dynamically, "Dynamically"},
    {TheoryId::Repeatedly, "Repeatedly"},
    {TheoryId::Nondeterministically, "Nondeterministically"},
}};

constexpr std::array<std::pair<RuleId, std::string_view>, 28> kRuleNames{{
    {RuleId::Refl, "Refl"},
    {RuleId::Sym, "Sym"},
    {RuleId::Trans, "Trans"},
    {RuleId::CongFMap, "CongFMap"},
    {RuleId::CongLiftA2, "CongLiftA2"},
    {RuleId::CongSelectBy, "CongSelectBy"},
    {RuleId::CongBind, "CongBind"},
    {RuleId::CongKPlus, "CongKPlus"},
    {RuleId::CongPlus, "CongPlus"},
    {RuleId::AppLeftId, "AppLeftId"},
    {RuleId::AppRightId, "AppRightId"},
    {RuleId::AppAssoc, "AppAssoc"},
    {RuleId::AppNaturality, "AppNaturality"},
    {RuleId::AppComm, "AppComm"},
    {RuleId::MonadLeftId, "MonadLeftId"},
    {RuleId::MonadRightId, "MonadRightId"},
    {RuleId::MonadAssoc, "MonadAssoc"},
    {RuleId::FunctorId, "FunctorId"},
    {RuleId::FunctorComp, "FunctorComp"},
    {RuleId::SelectInr, "SelectInr"},
    {RuleId::Repeat, "Repeat"},
    {RuleId::KPlus, "KPlus"},
    {RuleId::PlusComm, "PlusComm"},
    {RuleId::PlusAssoc, "PlusAssoc"},
    {RuleId::PlusLub, "PlusLub"},
    {RuleId::LeftPlus, "LeftPlus"},
    {RuleId::RightPlus, "RightPlus"},
    {RuleId::Promote, "Promote"},
}};

std::set<RuleId> rules_of(TheoryId id) {
  using R = RuleId;
  switch (id) {
    case TheoryId::Statically:
      return {R::CongLiftA2, R::AppLeftId, R::AppRightId, R::AppAssoc, R::AppNaturality,
              R::Refl,       R::Sym,       R::Trans};
    case TheoryId::StaticallyInParallel:
      return {R::CongLiftA2, R::AppLeftId, R::AppRightId, R::AppComm, R::Refl, R::Sym, R::Trans};
    case TheoryId::Dynamically:
      return {R::CongBind, R::MonadLeftId, R::MonadRightId, R::MonadAssoc, R::Refl, R::Sym, R::Trans};
    case TheoryId::Conditionally:
      return {R::CongSelectBy, R::SelectInr, R::Refl, R::Sym, R::Trans};
    case TheoryId::Streamingly:
      return {R::CongFMap, R::FunctorId, R::FunctorComp, R::Refl, R::Sym, R::Trans};
    case TheoryId::Repeatedly:
      return {R::Repeat, R::KPlus, R::CongKPlus, R::Refl, R::Sym, R::Trans, R::Promote};
    case TheoryId::Nondeterministically:
      return {R::PlusComm, R::PlusAssoc, R::PlusLub, R::LeftPlus, R::RightPlus,
              R::CongPlus, R::Refl,      R::Sym,     R::Trans,    R::Promote};
  }
  return {};
}

bool is_addon(TheoryId id) { return id == TheoryId::Repeatedly || id == TheoryId::Nondeterministically; }

}  // namespace

std::string_view to_string(TheoryId id) {
  for (const auto& [k, n] : kTheoryNames)
    if (k == id) return n;
  return "?";
}

std::string_view to_string(RuleId id) {
  for (const auto& [k, n] : kRuleNames)
    if (k == id) return n;
  return "?";
}

std::string_view to_string(Relation r) { return r == Relation::Equiv ? "equiv" : "refine"; }

std::optional<TheoryId> theory_from_string(std::string_view s) {
  for (const auto& [k, n] : kTheoryNames)
    if (n == s) return k;
  return std::nullopt;
}

std::optional<RuleId> rule_from_string(std::string_view s) {
  for (const auto& [k, n] : kRuleNames)
    if (n == s) return k;
  return std::nullopt;
}

std::string Theory::name() const {
  std::string out;
  for (auto id : ids) {
    if (!out.empty()) out += "+";
    out += to_string(id);
  }
  return out;
}

Theory theory_of(const std::set<TheoryId>& ids) {
  if (ids.empty()) throw Error(ErrorCode::InvalidArgument, "a theory needs at least one adverb");
  Theory th;
  th.ids = ids;
  th.relations.insert(Relation::Equiv);
  for (auto id : ids) {
    auto rs = rules_of(id);
    th.rules.insert(rs.begin(), rs.end());
    if (is_addon(id)) th.relations.insert(Relation::Refine);
  }
  return th;
}

Theory theory_union(const Theory& a, const Theory& b) {
  Theory out = a;
  out.ids.insert(b.ids.begin(), b.ids.end());
  out.rules.insert(b.rules.begin(), b.rules.end());
  out.relations.insert(b.relations.begin(), b.relations.end());
  return out;
}

}  // namespace adverbs::theory
