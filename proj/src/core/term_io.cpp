#include "adverbs/term_io.hpp"

#include <unordered_map>

#include "adverbs/error.hpp"

namespace adverbs {

namespace {

TypeRef literal_type(const Value& v) {
  if (v.is_bool()) return bool_type();
  if (v.is_unit()) return unit_type();
  if (v.is_nat() && v.as_nat() <= 7) return nat_type();
  return nullptr;
}

std::string fn_text(const FnRef& f) { return f->name(); }

class Printer {
 public:
  std::string print(const TermRef& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    std::string s = step(*t);
    memo_.emplace(t.get(), s);
    return s;
  }

 private:
  std::string step(const Term& t) {
    switch (t.tag()) {
      case KindTag::Pure: {
        const auto& v = t.get<PureNode>().value;
        auto lt = literal_type(v);
        if (lt && same_type(lt, t.type())) return "(pure " + v.to_string() + ")";
        return "(pure " + v.to_string() + " " + t.type()->name() + ")";
      }
      case KindTag::FMap: {
        const auto& n = t.get<FMapNode>();
        return "(fmap " + fn_text(n.g) + " " + print(n.a) + ")";
      }
      case KindTag::LiftA2: {
        const auto& n = t.get<LiftA2Node>();
        return "(liftA2 " + fn_text(n.f) + " " + print(n.a) + " " + print(n.b) + ")";
      }
      case KindTag::SelectBy: {
        const auto& n = t.get<SelectByNode>();
        if (n.f->name() == "select_dispatch") return "(select " + print(n.a) + " " + print(n.b) + ")";
        return "(selectBy " + fn_text(n.f) + " " + print(n.a) + " " + print(n.b) + ")";
      }
      case KindTag::Bind: {
        const auto& n = t.get<BindNode>();
        std::string out = "(bind " + print(n.m) + " ";
        if (!n.k.is_table()) return out + "<opaque>)";
        if (n.k.is_constant()) return out + "(const " + print(n.k.entries().front()) + "))";
        out += "(cases";
        const auto& carrier = n.k.domain()->carrier();
        for (std::size_t i = 0; i < carrier.size(); ++i)
          out += " (" + carrier[i].to_string() + " " + print(n.k.entries()[i]) + ")";
        return out + "))";
      }
      case KindTag::KPlus:
        return "(kplus " + print(t.get<KPlusNode>().a) + ")";
      case KindTag::Plus: {
        const auto& n = t.get<PlusNode>();
        return "(plus " + print(n.a) + " " + print(n.b) + ")";
      }
      case KindTag::Effect: {
        const auto& n = t.get<EffectNode>();
        std::string out = "(effect " + n.sig->name() + " " + n.op;
        for (const auto& a : n.args) out += " " + a.to_string();
        return out + ")";
      }
    }
    return "?";
  }

  std::unordered_map<const Term*, std::string> memo_;
};

const SExpr& arg(const SExpr& e, std::size_t i) {
  if (i >= e.items.size()) throw SyntaxError(e.position, "missing operand in " + e.to_string());
  return e.items[i];
}

void arity(const SExpr& e, std::size_t n) {
  if (e.items.size() != n) throw SyntaxError(e.position, "wrong number of operands in " + e.to_string());
}

}  // namespace

std::string to_sexpr(const TermRef& t) {
  Printer p;
  return p.print(t);
}

void FnRegistry::add(const FnRef& f) {
  builders_[f->name()] = [f](std::span<const TypeRef>) { return f; };
}

FnRegistry FnRegistry::standard() {
  FnRegistry r;
  r.add(fns::andb());
  r.add(fns::orb());
  r.add(fns::negb());
  auto need = [](std::span<const TypeRef> ts, std::size_t n, const char* name) {
    if (ts.size() != n) throw Error(ErrorCode::TypeMismatch, std::string(name) + " arity");
  };
  r.add("id", [need](std::span<const TypeRef> ts) {
    need(ts, 1, "id");
    return fns::identity(ts[0]);
  });
  r.add("first", [need](std::span<const TypeRef> ts) {
    need(ts, 2, "first");
    return fns::first(ts[0], ts[1]);
  });
  r.add("second", [need](std::span<const TypeRef> ts) {
    need(ts, 2, "second");
    return fns::second(ts[0], ts[1]);
  });
  r.add("pair", [need](std::span<const TypeRef> ts) {
    need(ts, 2, "pair");
    return fns::pair(ts[0], ts[1]);
  });
  r.add("apply", [need](std::span<const TypeRef> ts) {
    need(ts, 2, "apply");
    return fns::apply(ts[0]);
  });
  return r;
}

FnRef FnRegistry::resolve(const SExpr& e, std::span<const TypeRef> arg_types) const {
  if (e.head_is("flip")) {
    arity(e, 2);
    if (arg_types.size() != 2) throw Error(ErrorCode::TypeMismatch, "flip needs a binary function");
    std::vector<TypeRef> swapped{arg_types[1], arg_types[0]};
    return fns::flip(resolve(e.items[1], swapped));
  }
  if (e.head_is("compose")) {
    arity(e, 3);
    auto h = resolve(e.items[2], arg_types);
    TypeRef mid[] = {h->codomain()};
    return fns::compose(resolve(e.items[1], mid), h);
  }
  if (!e.is_atom) throw SyntaxError(e.position, "expected a function name");
  auto it = builders_.find(e.atom);
  if (it == builders_.end()) throw Error(ErrorCode::UnboundVar, "unknown function " + e.atom);
  return it->second(arg_types);
}

TermRef read_term(const SExpr& e, const ReadContext& ctx) {
  const auto& b = ctx.builder;
  if (!e.is_list() || e.items.empty() || !e.items[0].is_atom)
    throw SyntaxError(e.position, "expected a term, got " + e.to_string());
  const std::string& head = e.items[0].atom;
  if (head == "pure") {
    Value v = read_value(arg(e, 1));
    if (e.items.size() == 2) return b.pure(v);
    arity(e, 3);
    const auto& tn = arg(e, 2);
    auto it = ctx.types.find(tn.atom);
    if (!tn.is_atom || it == ctx.types.end()) throw Error(ErrorCode::UnboundVar, "unknown type " + tn.to_string());
    return b.pure(v, it->second);
  }
  if (head == "fmap") {
    arity(e, 3);
    auto a = read_term(e.items[2], ctx);
    TypeRef ts[] = {a->type()};
    return b.fmap(ctx.fns.resolve(e.items[1], ts), a);
  }
  if (head == "liftA2" || head == "selectBy") {
    arity(e, 4);
    auto x = read_term(e.items[2], ctx);
    auto y = read_term(e.items[3], ctx);
    if (head == "liftA2") {
      TypeRef ts[] = {x->type(), y->type()};
      return b.lift_a2(ctx.fns.resolve(e.items[1], ts), x, y);
    }
    TypeRef ts[] = {x->type()};
    return b.select_by(ctx.fns.resolve(e.items[1], ts), x, y);
  }
  if (head == "select") {
    arity(e, 3);
    return b.select(read_term(e.items[1], ctx), read_term(e.items[2], ctx));
  }
  if (head == "bind") {
    arity(e, 3);
    auto m = read_term(e.items[1], ctx);
    const auto& k = e.items[2];
    if (k.head_is("const")) {
      arity(k, 2);
      return b.bind(m, Continuation::constant(m->type(), read_term(k.items[1], ctx)));
    }
    if (!k.head_is("cases")) throw SyntaxError(k.position, "continuation must be (const t) or (cases ...)");
    std::map<Value, TermRef> cases;
    for (std::size_t i = 1; i < k.items.size(); ++i) {
      const auto& c = k.items[i];
      if (!c.is_list() || c.items.size() != 2) throw SyntaxError(c.position, "case must be (value term)");
      cases[read_value(c.items[0])] = read_term(c.items[1], ctx);
    }
    return b.bind(m, [&](const Value& v) {
      auto it = cases.find(v);
      if (it == cases.end()) throw Error(ErrorCode::TypeMismatch, "no case for " + v.to_string());
      return it->second;
    });
  }
  if (head == "kplus") {
    arity(e, 2);
    return b.kplus(read_term(e.items[1], ctx));
  }
  if (head == "plus") {
    arity(e, 3);
    return b.plus(read_term(e.items[1], ctx), read_term(e.items[2], ctx));
  }
  if (head == "effect") {
    if (e.items.size() < 3 || !e.items[1].is_atom || !e.items[2].is_atom)
      throw SyntaxError(e.position, "effect needs a signature and an operation");
    std::vector<Value> args;
    for (std::size_t i = 3; i < e.items.size(); ++i) args.push_back(read_value(e.items[i]));
    return b.effect(e.items[1].atom, e.items[2].atom, std::move(args));
  }
  throw SyntaxError(e.position, "unknown node " + head);
}

TermRef read_term(std::string_view text, const ReadContext& ctx) { return read_term(parse_sexpr(text), ctx); }

}  // namespace adverbs
