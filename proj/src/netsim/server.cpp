#include "adverbs/netsim/server.hpp"

#include <algorithm>
#include <set>

#include "adverbs/error.hpp"

namespace adverbs::net {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};

NetConfig NetConfig::with_conns(std::size_t n) {
  NetConfig c;
  c.conns.clear();
  for (std::size_t i = 0; i < n; ++i) c.conns.push_back({i + 1, i % 2 == 0 ? "READING" : "WRITING"});
  return c;
}

Value path(const std::string& var) { return Value::list({Value::symbol(var)}); }
Value element_path(const std::string& list, std::uint64_t index) {
  return Value::list({Value::symbol(list), Value::nat(index)});
}
Value field_path(const Value& element, const std::string& field) {
  List l = element.as_list();
  l.push_back(Value::symbol(field));
  return Value::list(std::move(l));
}

namespace {

[[noreturn]] void scope(const std::string& why) { throw Error(ErrorCode::ScopeError, why); }

Value conn_value(const Value& id, const Value& state) { return Value::record({{"id", id}, {"state", state}}); }

TypeRef field_type(const Layout& l, const std::string& list, const std::string& field) {
  auto it = l.lists.find(list);
  if (it == l.lists.end() || !same_type(it->second, l.conn)) return nullptr;
  if (field == "id") return l.nat;
  if (field == "state") return l.state;
  return nullptr;
}

/// Assigns a type to every variable by iterating the typing rules of the
/// statements to a fixpoint.
class Inference {
 public:
  Inference(Layout& l, std::size_t bound) : l_(l), bound_(bound) {}

  void run(const std::vector<Program>& programs) {
    for (int pass = 0; pass < 16; ++pass) {
      changed_ = false;
      for (const auto& p : programs) walk(p.body, false);
      if (!changed_) break;
    }
    for (const auto& p : programs) walk(p.body, true);
  }

 private:
  TypeRef pointer_for(const std::string& list) {
    if (auto it = l_.pointers.find(list); it != l_.pointers.end()) return it->second;
    std::vector<Value> c;
    for (std::size_t i = 0; i < bound_; ++i) c.push_back(element_path(list, i));
    return l_.pointers[list] = FiniteType::make("ptr(" + list + ")", c);
  }

  void bind_var(const std::string& v, const TypeRef& t) {
    if (!t) return;
    auto it = l_.vars.find(v);
    if (it == l_.vars.end()) {
      l_.vars[v] = t;
      changed_ = true;
    } else if (!same_type(it->second, t)) {
      scope(v + " is used as both " + it->second->name() + " and " + t->name());
    }
  }

  std::string pointee(const std::string& ptr, bool strict) {
    auto it = l_.vars.find(ptr);
    if (it != l_.vars.end())
      for (const auto& [list, pt] : l_.pointers)
        if (same_type(pt, it->second)) return list;
    if (strict) scope(ptr + " is not a pointer into a list");
    return {};
  }

  TypeRef type_of(const ExprRef& e, bool strict) {
    return std::visit(
        overloaded{
            [&](const NatLit& x) -> TypeRef {
              if (!l_.nat->contains(Value::nat(x.n))) throw Error(ErrorCode::TypeMismatch, std::to_string(x.n));
              return l_.nat;
            },
            [&](const StateLit&) -> TypeRef { return l_.state; },
            [&](const VarRead& x) -> TypeRef {
              auto it = l_.vars.find(x.name);
              if (it != l_.vars.end()) return it->second;
              if (strict) scope(x.name + " is read but never assigned");
              return nullptr;
            },
            [&](const FieldRead& x) -> TypeRef {
              auto list = pointee(x.ptr, strict);
              if (list.empty()) return nullptr;
              auto t = field_type(l_, list, x.field);
              if (!t && strict) scope("no field " + x.field + " through " + x.ptr);
              return t;
            },
            [&](const EqExpr& x) -> TypeRef {
              type_of(x.a, strict);
              type_of(x.b, strict);
              return l_.boolean;
            },
            [&](const NotExpr& x) -> TypeRef {
              type_of(x.a, strict);
              return l_.boolean;
            },
            [&](const MkConn& x) -> TypeRef {
              type_of(x.id, strict);
              type_of(x.state, strict);
              return l_.conn;
            },
        },
        e->node);
  }

  void lvalue(const LValue& lhs, const TypeRef& t, bool strict) {
    if (!lhs.field) return bind_var(lhs.var, t);
    auto list = pointee(lhs.var, strict);
    if (!list.empty() && strict && !field_type(l_, list, *lhs.field)) scope("no field " + *lhs.field);
  }

  void loop_var(const std::string& var, const std::string& list, bool strict) {
    if (l_.lists.count(list)) {
      bind_var(var, pointer_for(list));
    } else if (strict) {
      scope(list + " is not a list");
    }
  }

  void walk(const StmtRef& s, bool strict) {
    if (!s) return;
    std::visit(overloaded{
                   [&](const EffAssign& x) {
                     for (const auto& a : x.args) type_of(a, strict);
                     lvalue(x.lhs, l_.nat, strict);
                   },
                   [&](const Assign& x) { lvalue(x.lhs, type_of(x.e, strict), strict); },
                   [&](const Append& x) {
                     if (x.lhs.field) scope("cannot append to a field");
                     auto t = type_of(x.e, strict);
                     if (!t) return;
                     if (auto it = l_.lists.find(x.lhs.var); it == l_.lists.end()) {
                       l_.lists[x.lhs.var] = t;
                       bind_var(x.lhs.var, FiniteType::list_of(t, bound_));
                       pointer_for(x.lhs.var);
                     } else if (!same_type(it->second, t)) {
                       scope(x.lhs.var + " holds " + it->second->name());
                     }
                   },
                   [&](const If& x) {
                     type_of(x.cond, strict);
                     walk(x.then, strict);
                     walk(x.els, strict);
                   },
                   [&](const For& x) {
                     loop_var(x.var, x.list, strict);
                     walk(x.body, strict);
                   },
                   [&](const Seq& x) {
                     walk(x.a, strict);
                     walk(x.b, strict);
                   },
                   [&](const Some& x) { walk(x.a, strict); },
                   [&](const Or& x) {
                     walk(x.a, strict);
                     walk(x.b, strict);
                   },
                   [&](const OneOf& x) {
                     loop_var(x.var, x.list, strict);
                     walk(x.body, strict);
                   },
               },
               s->node);
  }

  Layout& l_;
  std::size_t bound_;
  bool changed_ = false;
};

Layout infer_layout(const NetConfig& cfg, const std::vector<Program>& programs) {
  Layout l;
  std::uint64_t max_nat = 0;
  for (const auto* os : {&cfg.accept_outcomes, &cfg.read_outcomes, &cfg.write_outcomes})
    for (auto v : *os) max_nat = std::max(max_nat, v);
  for (const auto& [id, st] : cfg.conns) max_nat = std::max(max_nat, id);
  l.nat = nat_type(max_nat);
  l.state = enum_type("state", {"READING", "WRITING", "CLOSED"});
  l.boolean = bool_type();
  std::vector<Value> conns;
  for (const auto& id : l.nat->carrier())
    for (const auto& st : l.state->carrier()) conns.push_back(conn_value(id, st));
  l.conn = FiniteType::make("connection", conns);

  std::size_t bound = cfg.list_bound();
  if (cfg.conns.size() > bound) throw Error(ErrorCode::InvalidArgument, "initial conns exceed the list bound");
  l.lists["conns"] = l.conn;
  l.vars["conns"] = FiniteType::list_of(l.conn, bound);
  Inference(l, bound).run(programs);
  // pointer_for registers lazily; make sure every list has one.
  for (const auto& [list, elem] : l.lists) {
    if (l.pointers.count(list)) continue;
    std::vector<Value> c;
    for (std::size_t i = 0; i < bound; ++i) c.push_back(element_path(list, i));
    l.pointers[list] = FiniteType::make("ptr(" + list + ")", c);
  }

  std::vector<Value> refs;
  std::vector<TypeRef> members{unit_type(), l.boolean, l.nat, l.state, l.conn};
  for (const auto& [v, t] : l.vars) {
    refs.push_back(path(v));
    members.push_back(t);
  }
  for (const auto& [list, elem] : l.lists)
    for (std::size_t i = 0; i < bound; ++i) {
      refs.push_back(element_path(list, i));
      if (same_type(elem, l.conn))
        for (const char* f : {"id", "state"}) refs.push_back(field_path(element_path(list, i), f));
    }
  for (const auto& [list, pt] : l.pointers) members.push_back(pt);
  l.refs = FiniteType::make("ref", refs);
  l.values = FiniteType::union_of("memval", members);
  return l;
}

/// Walks `p` through the store; `update` is applied to the addressed slot.
/// Returns false when the path leaves the stored structure.
bool at_path(sem::Store& store, const Value& p, const std::function<bool(Value&)>& update) {
  const auto& steps = p.as_list();
  auto it = store.find(path(steps[0].as_symbol()));
  if (it == store.end()) return false;
  Value root = it->second;
  std::function<bool(Value&, std::size_t)> go = [&](Value& v, std::size_t i) -> bool {
    if (i == steps.size()) return update(v);
    if (steps[i].is_nat()) {
      if (!v.is_list()) return false;
      List l = v.as_list();
      auto idx = steps[i].as_nat();
      if (idx >= l.size()) return false;
      if (!go(l[idx], i + 1)) return false;
      v = Value::list(std::move(l));
      return true;
    }
    auto f = v.field(steps[i].as_symbol());
    if (!f) return false;
    Value inner = *f;
    if (!go(inner, i + 1)) return false;
    v = v.with_field(steps[i].as_symbol(), inner);
    return true;
  };
  if (!go(root, 1)) return false;
  it->second = std::move(root);
  return true;
}

}  // namespace

TypeRef Layout::type_at(const Value& p) const {
  if (!p.is_list() || p.as_list().empty()) return nullptr;
  const auto& steps = p.as_list();
  const auto& var = steps[0].as_symbol();
  if (steps.size() == 1) {
    auto it = vars.find(var);
    return it == vars.end() ? nullptr : it->second;
  }
  auto it = lists.find(var);
  if (it == lists.end()) return nullptr;
  if (steps.size() == 2) return it->second;
  if (steps.size() == 3 && same_type(it->second, conn)) {
    const auto& f = steps[2].as_symbol();
    if (f == "id") return nat;
    if (f == "state") return state;
  }
  return nullptr;
}

struct Server::Compiled {
  std::optional<Value> value;
  TermRef term;
  TypeRef type;
};

Server::Server(NetConfig cfg, const std::vector<Program>& programs)
    : cfg_(std::move(cfg)), layout_(infer_layout(cfg_, programs)), builder_(Vocabulary{}) {
  const auto& L = layout_;
  auto net = EffectSig::make("NetworkEff", {
                                               OpSig{"accept", {}, L.nat, {}},
                                               OpSig{"read", {L.nat}, L.nat, {}},
                                               OpSig{"write", {L.nat, L.nat}, L.nat, {}},
                                           });
  const Layout* lp = &layout_;
  auto refine = [lp](std::span<const Value> args) {
    auto t = lp->type_at(args[0]);
    if (!t) throw Error(ErrorCode::ScopeError, "no cell at " + args[0].to_string());
    return t;
  };
  auto mem = EffectSig::make("MemoryEff", {
                                              OpSig{"get", {L.refs}, L.values, refine},
                                              OpSig{"set", {L.refs, L.values}, unit_type(), {}},
                                              OpSig{"append", {L.refs, L.values}, unit_type(), {}},
                                          });
  auto fail = EffectSig::make("FailEff", {OpSig{"fail", {}, unit_type(), {}}});
  builder_ = TermBuilder(Vocabulary({KindTag::KPlus, KindTag::Plus, KindTag::Pure, KindTag::Bind}, {net, mem, fail}));
}

sem::Store Server::initial_store() const {
  sem::Store s;
  for (const auto& [v, t] : layout_.vars) s[path(v)] = t->carrier().front();
  List conns;
  for (const auto& [id, st] : cfg_.conns) conns.push_back(conn_value(Value::nat(id), Value::symbol(st)));
  s[path("conns")] = Value::list(std::move(conns));
  return s;
}

sem::OutcomeModel Server::outcome_model() const {
  sem::OutcomeModel m;
  auto nats = [](const std::vector<std::uint64_t>& xs) {
    std::vector<Value> out;
    for (auto x : xs) out.push_back(Value::nat(x));
    return out;
  };
  m.outcomes["NetworkEff.accept"] = nats(cfg_.accept_outcomes);
  m.outcomes["NetworkEff.read"] = nats(cfg_.read_outcomes);
  m.outcomes["NetworkEff.write"] = nats(cfg_.write_outcomes);
  m.outcomes["FailEff.fail"] = {};
  std::size_t bound = cfg_.list_bound();
  m.handlers["MemoryEff"] = [bound](const EffectNode& e, const sem::Store& s) -> std::optional<sem::StoreStep> {
    sem::Store out = s;
    if (e.op == "get") {
      Value got;
      if (!at_path(out, e.args[0], [&](Value& v) {
            got = v;
            return true;
          }))
        return std::nullopt;
      return sem::StoreStep{got, std::move(out)};
    }
    if (e.op == "set") {
      if (!at_path(out, e.args[0], [&](Value& v) {
            v = e.args[1];
            return true;
          }))
        return std::nullopt;
      return sem::StoreStep{Value::unit(), std::move(out)};
    }
    if (e.op == "append") {
      if (!at_path(out, e.args[0], [&](Value& v) {
            if (!v.is_list() || v.as_list().size() >= bound) return false;
            List l = v.as_list();
            l.push_back(e.args[1]);
            v = Value::list(std::move(l));
            return true;
          }))
        return std::nullopt;
      return sem::StoreStep{Value::unit(), std::move(out)};
    }
    return std::nullopt;
  };
  m.recorded.insert("MemoryEff");
  m.initial = initial_store();
  return m;
}

TermRef Server::unit() const { return builder_.pure(Value::unit(), unit_type()); }
TermRef Server::get(const Value& p) const { return builder_.effect("MemoryEff", "get", {p}); }
TermRef Server::set(const Value& p, const Value& v) const { return builder_.effect("MemoryEff", "set", {p, v}); }

TermRef Server::then(const Compiled& c, const std::function<TermRef(const Value&)>& k) {
  if (c.value) return k(*c.value);
  return builder_.bind(c.term, k);
}

Server::Compiled Server::expr(const ExprRef& e) {
  const auto& L = layout_;
  auto lift1 = [&](const Compiled& a, TypeRef t, std::function<Value(const Value&)> f) -> Compiled {
    if (a.value) return {f(*a.value), nullptr, t};
    return {std::nullopt, then(a, [&](const Value& v) { return builder_.pure(f(v), t); }), t};
  };
  auto lift2 = [&](const Compiled& a, const Compiled& b, TypeRef t,
                   std::function<Value(const Value&, const Value&)> f) -> Compiled {
    if (a.value && b.value) return {f(*a.value, *b.value), nullptr, t};
    return {std::nullopt, then(a, [&](const Value& x) {
              return then(b, [&](const Value& y) { return builder_.pure(f(x, y), t); });
            }),
            t};
  };
  return std::visit(
      overloaded{
          [&](const NatLit& x) -> Compiled { return {Value::nat(x.n), nullptr, L.nat}; },
          [&](const StateLit& x) -> Compiled { return {Value::symbol(x.name), nullptr, L.state}; },
          [&](const VarRead& x) -> Compiled {
            auto t = L.type_at(path(x.name));
            if (!t) scope(x.name + " is not a variable");
            return {std::nullopt, get(path(x.name)), t};
          },
          [&](const FieldRead& x) -> Compiled {
            auto ptr = get(path(x.ptr));
            TypeRef t;
            auto term = builder_.bind(ptr, [&](const Value& p) {
              auto r = get(field_path(p, x.field));
              t = r->type();
              return r;
            });
            return {std::nullopt, term, t};
          },
          [&](const EqExpr& x) -> Compiled {
            return lift2(expr(x.a), expr(x.b), L.boolean,
                         [](const Value& a, const Value& b) { return Value::boolean(a == b); });
          },
          [&](const NotExpr& x) -> Compiled {
            auto a = expr(x.a);
            if (!same_type(a.type, L.boolean)) throw Error(ErrorCode::TypeMismatch, "not expects a boolean");
            return lift1(a, L.boolean, [](const Value& v) { return Value::boolean(!v.as_bool()); });
          },
          [&](const MkConn& x) -> Compiled {
            return lift2(expr(x.id), expr(x.state), L.conn, [](const Value& a, const Value& b) { return conn_value(a, b); });
          },
      },
      e->node);
}

TermRef Server::assign_to(const LValue& lhs, const Value& v) {
  if (!lhs.field) return set(path(lhs.var), v);
  return builder_.bind(get(path(lhs.var)), [&](const Value& p) { return set(field_path(p, *lhs.field), v); });
}

TermRef Server::loop(const std::string& list, const std::string& var, const StmtRef& body, bool choice) {
  auto b = stmt(body);
  // Entries depend only on the list's length, so each length is built once.
  std::map<std::size_t, TermRef> by_length;
  return builder_.bind(get(path(list)), [&](const Value& xs) {
    std::size_t n = xs.as_list().size();
    if (auto it = by_length.find(n); it != by_length.end()) return it->second;
    TermRef acc = unit();
    for (std::size_t i = n; i-- > 0;) {
      auto step = builder_.bind(set(path(var), element_path(list, i)), Continuation::constant(unit_type(), b));
      acc = choice ? builder_.plus(step, acc) : builder_.bind(step, Continuation::constant(unit_type(), acc));
    }
    if (choice) acc = builder_.kplus(acc);
    return by_length[n] = acc;
  });
}

TermRef Server::stmt(const StmtRef& s) {
  auto key = pretty(s);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  auto t = std::visit(
      overloaded{
          [&](const EffAssign& x) -> TermRef {
            std::vector<Compiled> args;
            for (const auto& a : x.args) args.push_back(expr(a));
            const char* op = x.op == NetOp::Accept ? "accept" : x.op == NetOp::Read ? "read" : "write";
            std::function<TermRef(std::size_t, std::vector<Value>)> go = [&](std::size_t i, std::vector<Value> vs) {
              if (i == args.size())
                return builder_.bind(builder_.effect("NetworkEff", op, vs),
                                     [&](const Value& r) { return assign_to(x.lhs, r); });
              return then(args[i], [&](const Value& v) {
                auto next = vs;
                next.push_back(v);
                return go(i + 1, next);
              });
            };
            return go(0, {});
          },
          [&](const Assign& x) -> TermRef {
            return then(expr(x.e), [&](const Value& v) { return assign_to(x.lhs, v); });
          },
          [&](const Append& x) -> TermRef {
            return then(expr(x.e),
                        [&](const Value& v) { return builder_.effect("MemoryEff", "append", {path(x.lhs.var), v}); });
          },
          [&](const If& x) -> TermRef {
            auto c = expr(x.cond);
            if (!same_type(c.type, layout_.boolean)) throw Error(ErrorCode::TypeMismatch, "IF expects a boolean");
            auto yes = stmt(x.then);
            auto no = x.els ? stmt(x.els) : unit();
            return then(c, [&](const Value& v) { return v.as_bool() ? yes : no; });
          },
          [&](const For& x) -> TermRef { return loop(x.list, x.var, x.body, false); },
          [&](const Seq& x) -> TermRef {
            auto a = stmt(x.a);
            return builder_.bind(a, Continuation::constant(a->type(), stmt(x.b)));
          },
          [&](const Some& x) -> TermRef { return builder_.kplus(stmt(x.a)); },
          [&](const Or& x) -> TermRef { return builder_.kplus(builder_.plus(stmt(x.a), stmt(x.b))); },
          [&](const OneOf& x) -> TermRef { return loop(x.list, x.var, x.body, true); },
      },
      s->node);
  cache_[key] = t;
  return t;
}

TermRef Server::embed(const StmtRef& s) { return stmt(s); }
TermRef Server::embed(const Program& p) { return stmt(p.body); }

std::optional<std::string> state_machine_violation(const Server& s, const sem::Trace& trace) {
  auto model = s.outcome_model();
  sem::Store store = model.initial;
  const auto& handler = model.handlers.at("MemoryEff");
  auto allowed = [](const std::string& from, const std::string& to) {
    if (from == "READING") return to == "WRITING" || to == "CLOSED";
    return to == "CLOSED";
  };
  for (const auto& ev : trace) {
    if (ev.sig != "MemoryEff") continue;
    if (ev.op == "set") {
      const auto& steps = ev.args[0].as_list();
      if (steps.size() == 3 && steps[2] == Value::symbol("state")) {
        Value before;
        at_path(store, ev.args[0], [&](Value& v) {
          before = v;
          return true;
        });
        if (!allowed(before.as_symbol(), ev.args[1].as_symbol()))
          return ev.args[0].to_string() + ": " + before.as_symbol() + " -> " + ev.args[1].as_symbol();
      }
    }
    EffectNode node{nullptr, ev.op, ev.args};
    auto step = handler(node, store);
    if (!step) return "memory event does not replay: " + ev.to_string();
    store = std::move(step->store);
  }
  return std::nullopt;
}

}  // namespace adverbs::net
