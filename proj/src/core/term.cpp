#include "adverbs/term.hpp"

#include <set>
#include <unordered_set>
#include <utility>

#include "adverbs/error.hpp"

namespace adverbs {

namespace {

std::size_t mix(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t fn_hash(const FnRef& f) {
  if (!f->is_table()) return std::hash<const void*>{}(f.get());
  std::size_t h = f->table().size();
  for (const auto& v : f->table()) h = mix(h, hash_value(v));
  return h;
}

std::size_t payload_hash(const Term::Payload& p) {
  std::size_t h = p.index();
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PureNode>) {
          h = mix(h, hash_value(n.value));
        } else if constexpr (std::is_same_v<N, FMapNode>) {
          h = mix(mix(h, fn_hash(n.g)), n.a->hash());
        } else if constexpr (std::is_same_v<N, LiftA2Node> || std::is_same_v<N, SelectByNode>) {
          h = mix(mix(mix(h, fn_hash(n.f)), n.a->hash()), n.b->hash());
        } else if constexpr (std::is_same_v<N, BindNode>) {
          h = mix(h, n.m->hash());
          if (n.k.is_table()) {
            for (const auto& e : n.k.entries()) h = mix(h, e->hash());
          } else {
            h = mix(h, 0x5151);
          }
        } else if constexpr (std::is_same_v<N, KPlusNode>) {
          h = mix(h, n.a->hash());
        } else if constexpr (std::is_same_v<N, PlusNode>) {
          h = mix(mix(h, n.a->hash()), n.b->hash());
        } else {
          h = mix(mix(h, std::hash<std::string>{}(n.sig->name())), std::hash<std::string>{}(n.op));
          for (const auto& v : n.args) h = mix(h, hash_value(v));
        }
      },
      p);
  return h;
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorCode::TypeMismatch, what); }

}  // namespace

Continuation Continuation::tabulate(const TypeRef& domain, const Body& k) {
  std::vector<TermRef> entries;
  entries.reserve(domain->size());
  for (const auto& v : domain->carrier()) entries.push_back(k(v));
  return from_table(domain, std::move(entries));
}

Continuation Continuation::from_table(TypeRef domain, std::vector<TermRef> entries) {
  if (entries.size() != domain->size())
    mismatch("continuation over " + domain->name() + " must have " + std::to_string(domain->size()) +
             " entries");
  Continuation c;
  c.domain_ = std::move(domain);
  c.result_ = entries.front()->type();
  for (const auto& e : entries)
    if (!same_type(e->type(), c.result_))
      mismatch("continuation entries disagree: " + c.result_->name() + " vs " + e->type()->name());
  c.entries_ = std::move(entries);
  return c;
}

Continuation Continuation::constant(const TypeRef& domain, const TermRef& t) {
  return from_table(domain, std::vector<TermRef>(domain->size(), t));
}

Continuation Continuation::opaque(TypeRef domain, TypeRef result, Body k) {
  Continuation c;
  c.domain_ = std::move(domain);
  c.result_ = std::move(result);
  c.opaque_ = std::move(k);
  return c;
}

bool Continuation::is_constant() const {
  if (opaque_) return false;
  for (const auto& e : entries_)
    if (e != entries_.front() && !term_equal(e, entries_.front())) return false;
  return true;
}

TermRef Continuation::operator()(const Value& v) const {
  if (opaque_) return opaque_(v);
  auto i = domain_->index_of(v);
  if (!i) mismatch(v.to_string() + " is outside " + domain_->name());
  return entries_[*i];
}

Term::Term(TypeRef type, Payload payload)
    : type_(std::move(type)), payload_(std::move(payload)), hash_(payload_hash(payload_)) {}

NodeKind Term::kind() const {
  if (const auto* e = as<EffectNode>()) return NodeKind::effect_kind(e->sig->name());
  return NodeKind::of(tag());
}

std::vector<TermRef> Term::children() const {
  return std::visit(
      [](const auto& n) -> std::vector<TermRef> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, FMapNode> || std::is_same_v<N, KPlusNode>) {
          return {n.a};
        } else if constexpr (std::is_same_v<N, LiftA2Node> || std::is_same_v<N, SelectByNode> ||
                             std::is_same_v<N, PlusNode>) {
          return {n.a, n.b};
        } else if constexpr (std::is_same_v<N, BindNode>) {
          return {n.m};
        } else {
          return {};
        }
      },
      payload_);
}

namespace {

struct EqualityCheck {
  std::set<std::pair<const Term*, const Term*>> known;

  bool eq(const TermRef& a, const TermRef& b) {
    if (a == b) return true;
    if (a->hash() != b->hash() || a->payload().index() != b->payload().index()) return false;
    if (!same_type(a->type(), b->type())) return false;
    auto key = std::make_pair(a.get(), b.get());
    if (known.count(key)) return true;
    bool r = std::visit(
        [&](const auto& x) {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b->payload());
          if constexpr (std::is_same_v<N, PureNode>) {
            return x.value == y.value;
          } else if constexpr (std::is_same_v<N, FMapNode>) {
            return same_fn(x.g, y.g) && eq(x.a, y.a);
          } else if constexpr (std::is_same_v<N, LiftA2Node> || std::is_same_v<N, SelectByNode>) {
            return same_fn(x.f, y.f) && eq(x.a, y.a) && eq(x.b, y.b);
          } else if constexpr (std::is_same_v<N, BindNode>) {
            if (!eq(x.m, y.m) || x.k.is_table() != y.k.is_table()) return false;
            if (!x.k.is_table()) return false;
            const auto& ex = x.k.entries();
            const auto& ey = y.k.entries();
            if (ex.size() != ey.size()) return false;
            for (std::size_t i = 0; i < ex.size(); ++i)
              if (!eq(ex[i], ey[i])) return false;
            return true;
          } else if constexpr (std::is_same_v<N, KPlusNode>) {
            return eq(x.a, y.a);
          } else if constexpr (std::is_same_v<N, PlusNode>) {
            return eq(x.a, y.a) && eq(x.b, y.b);
          } else {
            return x.sig->name() == y.sig->name() && x.op == y.op && x.args == y.args;
          }
        },
        a->payload());
    if (r) known.insert(key);
    return r;
  }
};

}  // namespace

bool term_equal(const TermRef& a, const TermRef& b) {
  EqualityCheck check;
  return check.eq(a, b);
}

std::vector<NodeKind> kinds_of(const TermRef& t) {
  std::set<NodeKind> kinds;
  std::unordered_set<const Term*> seen;
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    kinds.insert(n->kind());
    for (const auto& c : n->children()) stack.push_back(c.get());
    if (const auto* b = n->as<BindNode>(); b && b->k.is_table())
      for (const auto& e : b->k.entries()) stack.push_back(e.get());
  }
  return {kinds.begin(), kinds.end()};
}

bool fits(const TypeRef& actual, const TypeRef& declared) {
  if (same_type(actual, declared)) return true;
  for (const auto& v : actual->carrier())
    if (!declared->contains(v)) return false;
  return true;
}

void TermBuilder::require(KindTag tag) const {
  if (!vocab_.has(tag))
    throw Error(ErrorCode::KindNotInVocabulary, std::string(to_string(tag)) + " is not enabled");
}

TermRef TermBuilder::pure(const Value& v, TypeRef type) const {
  require(KindTag::Pure);
  if (!type) {
    if (v.is_bool()) type = bool_type();
    else if (v.is_unit()) type = unit_type();
    else if (v.is_nat()) type = nat_type();
    else mismatch("cannot infer a type for " + v.to_string());
  }
  if (!type->contains(v)) mismatch(v.to_string() + " is outside " + type->name());
  return std::make_shared<Term>(type, PureNode{v});
}

TermRef TermBuilder::fmap(const FnRef& g, const TermRef& a) const {
  require(KindTag::FMap);
  if (g->arity() != 1 || !fits(a->type(), g->domain()[0]))
    mismatch("fmap " + g->name() + " over " + a->type()->name());
  return std::make_shared<Term>(g->codomain(), FMapNode{g, a});
}

TermRef TermBuilder::lift_a2(const FnRef& f, const TermRef& a, const TermRef& b) const {
  require(KindTag::LiftA2);
  if (f->arity() != 2 || !fits(a->type(), f->domain()[0]) || !fits(b->type(), f->domain()[1]))
    mismatch("liftA2 " + f->name() + " over " + a->type()->name() + ", " + b->type()->name());
  return std::make_shared<Term>(f->codomain(), LiftA2Node{f, a, b});
}

TermRef TermBuilder::select_by(const FnRef& f, const TermRef& a, const TermRef& b) const {
  require(KindTag::SelectBy);
  const auto& cod = f->codomain();
  if (f->arity() != 1 || cod->shape() != FiniteType::Shape::Either)
    mismatch("selectBy function must return Either(Y -> R, R)");
  const auto& handler = cod->param(0);
  const auto& r = cod->param(1);
  if (handler->shape() != FiniteType::Shape::Function || !same_type(handler->param(1), r))
    mismatch("selectBy function must return Either(Y -> R, R)");
  if (!fits(a->type(), f->domain()[0]) || !fits(b->type(), handler->param(0)))
    mismatch("selectBy " + f->name() + " over " + a->type()->name() + ", " + b->type()->name());
  return std::make_shared<Term>(r, SelectByNode{f, a, b});
}

TermRef TermBuilder::bind(const TermRef& m, Continuation k) const {
  require(KindTag::Bind);
  if (!fits(m->type(), k.domain()))
    mismatch("continuation over " + k.domain()->name() + " cannot follow " + m->type()->name());
  auto type = k.result_type();
  return std::make_shared<Term>(type, BindNode{m, std::move(k)});
}

TermRef TermBuilder::bind(const TermRef& m, const Continuation::Body& k) const {
  require(KindTag::Bind);
  return bind(m, Continuation::tabulate(m->type(), k));
}

TermRef TermBuilder::kplus(const TermRef& a) const {
  require(KindTag::KPlus);
  return std::make_shared<Term>(a->type(), KPlusNode{a});
}

TermRef TermBuilder::plus(const TermRef& a, const TermRef& b) const {
  require(KindTag::Plus);
  if (!same_type(a->type(), b->type()))
    mismatch("plus over " + a->type()->name() + " and " + b->type()->name());
  return std::make_shared<Term>(a->type(), PlusNode{a, b});
}

TermRef TermBuilder::effect(const std::string& sig, const std::string& op, std::vector<Value> args) const {
  auto s = vocab_.effect(sig);
  if (!s) throw Error(ErrorCode::KindNotInVocabulary, "effect " + sig + " is not enabled");
  const OpSig* o = s->find(op);
  if (!o) mismatch(sig + " has no operation " + op);
  if (o->arg_types.size() != args.size()) mismatch(sig + "." + op + " arity");
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!o->arg_types[i]->contains(args[i]))
      mismatch(args[i].to_string() + " is outside " + o->arg_types[i]->name());
  auto type = o->result_type_for(args);
  return std::make_shared<Term>(type, EffectNode{s, op, std::move(args)});
}

FnRef select_dispatcher(const TypeRef& either_type) {
  if (either_type->shape() != FiniteType::Shape::Either) mismatch("select needs a sum-typed scrutinee");
  const auto& a = either_type->param(0);
  const auto& b = either_type->param(1);
  auto handler = FiniteType::function(a, b);
  auto cont = FiniteType::function(handler, b);
  auto cod = FiniteType::either(cont, b);
  return Fn::tabulate("select_dispatch", {either_type}, cod, [&](std::span<const Value> xs) {
    const Value& x = xs[0];
    if (x.is_inr()) return Value::inr(x.payload());
    return Value::inl(
        tabulate(*cont, [&](const Value& y) { return apply_table(*handler, y, x.payload()); }));
  });
}

TermRef TermBuilder::select(const TermRef& a, const TermRef& b) const {
  require(KindTag::SelectBy);
  const auto& t = a->type();
  if (t->shape() != FiniteType::Shape::Either) mismatch("select needs a sum-typed scrutinee");
  const auto& bt = b->type();
  if (bt->shape() != FiniteType::Shape::Function || !same_type(bt->param(0), t->param(0)) ||
      !same_type(bt->param(1), t->param(1)))
    mismatch("select handler must have type " + t->param(0)->name() + " -> " + t->param(1)->name());
  return select_by(select_dispatcher(t), a, b);
}

}  // namespace adverbs
