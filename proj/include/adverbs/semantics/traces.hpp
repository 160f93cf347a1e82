#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adverbs/term.hpp"

namespace adverbs::sem {

/// One observable effect occurrence with the outcome that was chosen.
struct Event {
  std::string sig;
  std::string op;
  std::vector<Value> args;
  Value outcome;

  auto operator<=>(const Event&) const = default;
  bool operator==(const Event&) const = default;
  std::string to_string() const;
};

using Trace = std::vector<Event>;

struct Behavior {
  Trace trace;
  Value result;

  auto operator<=>(const Behavior&) const = default;
  bool operator==(const Behavior&) const = default;
  /// `e1; e2; ... => result`
  std::string to_string() const;
};

struct TraceSet {
  std::set<Behavior> behaviors;

  bool contains(const Behavior& b) const { return behaviors.count(b) != 0; }
  std::size_t size() const { return behaviors.size(); }
  /// Sorted, one behavior per line.
  std::string to_text() const;
  bool includes(const TraceSet& other) const;
  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

TraceSet set_union(const TraceSet& a, const TraceSet& b);

using Store = std::map<Value, Value>;

/// A deterministic, store-based handler. Returns nullopt when the operation
/// cannot proceed in this store (the branch is dropped).
struct StoreStep {
  Value result;
  Store store;
};
using StoreHandler = std::function<std::optional<StoreStep>(const EffectNode&, const Store&)>;

/// How uninterpreted effects behave when a term is run: enumerated outcomes
/// per operation, or a store-based handler for a whole signature. Handled
/// signatures are internal (not recorded in traces) unless listed in
/// `recorded`, in which case the handler's result is the event's outcome.
struct OutcomeModel {
  /// Keyed by "Sig.op"; absent keys default to the full result carrier.
  std::map<std::string, std::vector<Value>> outcomes;
  std::map<std::string, StoreHandler> handlers;
  std::set<std::string> recorded;
  Store initial;

  std::vector<Value> outcomes_for(const Term& call) const;
};

enum class Order {
  /// LiftA2 runs its left operand first.
  Sequential,
  /// LiftA2 contributes both whole-operand orders.
  BothOrders,
};

struct ExploreOptions {
  Order order = Order::Sequential;
  /// KPlus runs its body 1..kplus_bound times.
  unsigned kplus_bound = 1;
};

/// Depth-first enumeration of every behavior of `t`. `visit` returns false
/// to stop early; the return value is false iff stopped.
bool explore(const TermRef& t, const OutcomeModel& m, const ExploreOptions& opt,
             const std::function<bool(const Behavior&)>& visit);

/// Whether `t` can exhibit exactly `b`. Branches are pruned as soon as their
/// trace departs from `b`'s.
bool can_exhibit(const TermRef& t, const OutcomeModel& m, const ExploreOptions& opt, const Behavior& b);

TraceSet trace_sem(const TermRef& t, const OutcomeModel& m, unsigned kplus_bound);
TraceSet powerset_interpret(const TermRef& t, const OutcomeModel& m, unsigned kplus_bound);

bool oracle_equiv(const TermRef& t1, const TermRef& t2, const OutcomeModel& m, unsigned kplus_bound);

struct RefinementCheck {
  bool holds = true;
  /// A behavior of the left term the right term cannot exhibit.
  std::optional<Behavior> witness;
  std::size_t behaviors_checked = 0;
};

/// trace_sem(t1)@bound_l ⊆ trace_sem(t2)@bound_r, decided behavior by
/// behavior; stops at the first witness.
RefinementCheck oracle_refines(const TermRef& t1, const TermRef& t2, const OutcomeModel& m, unsigned bound_l,
                               unsigned bound_r);

}  // namespace adverbs::sem
