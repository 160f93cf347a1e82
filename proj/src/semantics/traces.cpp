#include "adverbs/semantics/traces.hpp"

#include <sstream>
#include <unordered_map>

namespace adverbs::sem {

std::string Event::to_string() const {
  std::string out = sig + "." + op;
  for (const auto& a : args) out += " " + a.to_string();
  return out + " -> " + outcome.to_string();
}

std::string Behavior::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) out += (i ? "; " : "") + trace[i].to_string();
  return out + "] => " + result.to_string();
}

std::string TraceSet::to_text() const {
  std::string out;
  for (const auto& b : behaviors) out += b.to_string() + "\n";
  return out;
}

bool TraceSet::includes(const TraceSet& other) const {
  for (const auto& b : other.behaviors)
    if (!contains(b)) return false;
  return true;
}

TraceSet set_union(const TraceSet& a, const TraceSet& b) {
  TraceSet out = a;
  out.behaviors.insert(b.behaviors.begin(), b.behaviors.end());
  return out;
}

std::vector<Value> OutcomeModel::outcomes_for(const Term& call) const {
  const auto& e = call.get<EffectNode>();
  if (auto it = outcomes.find(e.sig->name() + "." + e.op); it != outcomes.end()) {
    std::vector<Value> out;
    for (const auto& v : it->second)
      if (call.type()->contains(v)) out.push_back(v);
    return out;
  }
  return call.type()->carrier();
}

namespace {

struct State {
  Store store;
  Trace trace;
};

using K = std::function<bool(const State&, const Value&)>;
using Runner = std::function<bool(const State&, const K&)>;

class Explorer {
 public:
  Explorer(const OutcomeModel& m, const ExploreOptions& opt, const Behavior* target)
      : m_(m), opt_(opt), target_(target) {}

  bool run(const TermRef& t, const State& s, const K& k) {
    switch (t->tag()) {
      case KindTag::Pure:
        return k(s, t->get<PureNode>().value);
      case KindTag::FMap: {
        const auto& n = t->get<FMapNode>();
        return run(n.a, s, [&](const State& s1, const Value& v) { return k(s1, (*n.g)(v)); });
      }
      case KindTag::LiftA2: {
        const auto& n = t->get<LiftA2Node>();
        return lift2(runner(n.a), runner(n.b), *n.f, s, k);
      }
      case KindTag::SelectBy: {
        const auto& n = t->get<SelectByNode>();
        return run(n.a, s, [&](const State& s1, const Value& x) {
          Value choice = (*n.f)(x);
          if (choice.is_inr()) return k(s1, choice.payload());
          const auto& handler_t = n.f->codomain()->param(0);
          return run(n.b, s1, [&](const State& s2, const Value& y) {
            return k(s2, apply_table(*handler_t, choice.payload(), y));
          });
        });
      }
      case KindTag::Bind: {
        const auto& n = t->get<BindNode>();
        return run(n.m, s, [&](const State& s1, const Value& v) { return run(n.k(v), s1, k); });
      }
      case KindTag::KPlus: {
        const auto& a = t->get<KPlusNode>().a;
        for (unsigned r = 1; r <= opt_.kplus_bound; ++r)
          if (!repeat(a, r, s, k)) return false;
        return true;
      }
      case KindTag::Plus: {
        const auto& n = t->get<PlusNode>();
        return run(n.a, s, k) && run(n.b, s, k);
      }
      case KindTag::Effect:
        return effect(*t, s, k);
    }
    return true;
  }

 private:
  Runner runner(const TermRef& t) {
    return [this, t](const State& s, const K& k) { return run(t, s, k); };
  }

  template <class F>
  bool lift2(const Runner& ra, const Runner& rb, const F& f, const State& s, const K& k) {
    bool go = ra(s, [&](const State& s1, const Value& va) {
      return rb(s1, [&](const State& s2, const Value& vb) { return k(s2, f(va, vb)); });
    });
    if (!go || opt_.order == Order::Sequential) return go;
    return rb(s, [&](const State& s1, const Value& vb) {
      return ra(s1, [&](const State& s2, const Value& va) { return k(s2, f(va, vb)); });
    });
  }

  // r copies of a, sequenced as liftA2 (fun _ x => x) a (repeat a (r - 1)).
  bool repeat(const TermRef& a, unsigned r, const State& s, const K& k) {
    if (r == 1) return run(a, s, k);
    auto second = [](const Value&, const Value& y) { return y; };
    Runner rest = [this, a, r](const State& s1, const K& k1) { return repeat(a, r - 1, s1, k1); };
    return lift2(runner(a), rest, second, s, k);
  }

  bool effect(const Term& t, const State& s, const K& k) {
    const auto& e = t.get<EffectNode>();
    if (auto h = m_.handlers.find(e.sig->name()); h != m_.handlers.end()) {
      auto step = h->second(e, s.store);
      if (!step) return true;
      State s1{std::move(step->store), s.trace};
      if (m_.recorded.count(e.sig->name())) {
        Event ev{e.sig->name(), e.op, e.args, step->result};
        if (target_ && (s.trace.size() >= target_->trace.size() || target_->trace[s.trace.size()] != ev))
          return true;
        s1.trace.push_back(std::move(ev));
      }
      return k(s1, step->result);
    }
    for (const auto& o : m_.outcomes_for(t)) {
      Event ev{e.sig->name(), e.op, e.args, o};
      if (target_) {
        std::size_t pos = s.trace.size();
        if (pos >= target_->trace.size() || target_->trace[pos] != ev) continue;
      }
      State s1 = s;
      s1.trace.push_back(std::move(ev));
      if (!k(s1, o)) return false;
    }
    return true;
  }

  const OutcomeModel& m_;
  ExploreOptions opt_;
  const Behavior* target_;
};

/// Bottom-up behavior sets, one per subterm, for models without store
/// handlers. Agrees with Explorer but never revisits a duplicate path.
class SetSemantics {
 public:
  SetSemantics(const OutcomeModel& m, const ExploreOptions& opt) : m_(m), opt_(opt) {}

  const std::set<Behavior>& of(const TermRef& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    std::set<Behavior> out;
    switch (t->tag()) {
      case KindTag::Pure: out.insert({{}, t->get<PureNode>().value}); break;
      case KindTag::FMap: {
        const auto& n = t->get<FMapNode>();
        for (const auto& b : of(n.a)) out.insert({b.trace, (*n.g)(b.result)});
        break;
      }
      case KindTag::LiftA2: {
        const auto& n = t->get<LiftA2Node>();
        lift2(of(n.a), of(n.b), [&](const Value& x, const Value& y) { return (*n.f)(x, y); }, out);
        break;
      }
      case KindTag::SelectBy: {
        const auto& n = t->get<SelectByNode>();
        const auto& handler_t = n.f->codomain()->param(0);
        for (const auto& b : of(n.a)) {
          Value choice = (*n.f)(b.result);
          if (choice.is_inr()) {
            out.insert({b.trace, choice.payload()});
            continue;
          }
          for (const auto& h : of(n.b)) out.insert({concat(b.trace, h.trace), apply_table(*handler_t, choice.payload(), h.result)});
        }
        break;
      }
      case KindTag::Bind: {
        const auto& n = t->get<BindNode>();
        for (const auto& b : of(n.m))
          for (const auto& c : of(n.k(b.result))) out.insert({concat(b.trace, c.trace), c.result});
        break;
      }
      case KindTag::KPlus: {
        const auto& a = of(t->get<KPlusNode>().a);
        std::set<Behavior> rep = a;
        out = a;
        for (unsigned r = 2; r <= opt_.kplus_bound; ++r) {
          std::set<Behavior> next;
          lift2(a, rep, [](const Value&, const Value& y) { return y; }, next);
          rep = std::move(next);
          out.insert(rep.begin(), rep.end());
        }
        break;
      }
      case KindTag::Plus: {
        const auto& n = t->get<PlusNode>();
        out = of(n.a);
        const auto& b = of(n.b);
        out.insert(b.begin(), b.end());
        break;
      }
      case KindTag::Effect: {
        const auto& e = t->get<EffectNode>();
        for (const auto& o : m_.outcomes_for(*t)) out.insert({{Event{e.sig->name(), e.op, e.args, o}}, o});
        break;
      }
    }
    keep_.push_back(t);
    return memo_.emplace(t.get(), std::move(out)).first->second;
  }

 private:
  static Trace concat(const Trace& a, const Trace& b) {
    Trace out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  template <class F>
  void lift2(const std::set<Behavior>& as, const std::set<Behavior>& bs, const F& f, std::set<Behavior>& out) {
    for (const auto& a : as)
      for (const auto& b : bs) {
        out.insert({concat(a.trace, b.trace), f(a.result, b.result)});
        if (opt_.order == Order::BothOrders) out.insert({concat(b.trace, a.trace), f(a.result, b.result)});
      }
  }

  const OutcomeModel& m_;
  ExploreOptions opt_;
  std::unordered_map<const Term*, std::set<Behavior>> memo_;
  std::vector<TermRef> keep_;  // pins continuation entries built on demand
};

TraceSet collect(const TermRef& t, const OutcomeModel& m, const ExploreOptions& opt) {
  TraceSet out;
  if (m.handlers.empty()) {
    out.behaviors = SetSemantics(m, opt).of(t);
    return out;
  }
  Explorer ex(m, opt, nullptr);
  ex.run(t, State{m.initial, {}}, [&](const State& end, const Value& v) {
    out.behaviors.insert(Behavior{end.trace, v});
    return true;
  });
  return out;
}

}  // namespace

bool explore(const TermRef& t, const OutcomeModel& m, const ExploreOptions& opt,
             const std::function<bool(const Behavior&)>& visit) {
  Explorer ex(m, opt, nullptr);
  State s{m.initial, {}};
  return ex.run(t, s, [&](const State& end, const Value& v) { return visit(Behavior{end.trace, v}); });
}

bool can_exhibit(const TermRef& t, const OutcomeModel& m, const ExploreOptions& opt, const Behavior& b) {
  Explorer ex(m, opt, &b);
  State s{m.initial, {}};
  bool found = false;
  ex.run(t, s, [&](const State& end, const Value& v) {
    if (end.trace.size() == b.trace.size() && v == b.result) found = true;
    return !found;
  });
  return found;
}

TraceSet trace_sem(const TermRef& t, const OutcomeModel& m, unsigned kplus_bound) {
  return collect(t, m, {Order::Sequential, kplus_bound});
}

TraceSet powerset_interpret(const TermRef& t, const OutcomeModel& m, unsigned kplus_bound) {
  return collect(t, m, {Order::BothOrders, kplus_bound});
}

bool oracle_equiv(const TermRef& t1, const TermRef& t2, const OutcomeModel& m, unsigned kplus_bound) {
  return powerset_interpret(t1, m, kplus_bound) == powerset_interpret(t2, m, kplus_bound);
}

RefinementCheck oracle_refines(const TermRef& t1, const TermRef& t2, const OutcomeModel& m, unsigned bound_l,
                               unsigned bound_r) {
  RefinementCheck out;
  std::set<Behavior> seen;
  ExploreOptions right{Order::Sequential, bound_r};
  explore(t1, m, {Order::Sequential, bound_l}, [&](const Behavior& b) {
    if (!seen.insert(b).second) return true;
    ++out.behaviors_checked;
    if (can_exhibit(t2, m, right, b)) return true;
    out.holds = false;
    out.witness = b;
    return false;
  });
  return out;
}

}  // namespace adverbs::sem
