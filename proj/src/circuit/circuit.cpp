#include "adverbs/circuit/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "adverbs/error.hpp"
#include "adverbs/fold.hpp"

namespace adverbs::circuit {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};

CircuitRef lit(bool b) { return std::make_shared<Circuit>(Circuit{Lit{b}}); }
CircuitRef var(std::string name) { return std::make_shared<Circuit>(Circuit{Var{std::move(name)}}); }
CircuitRef neg(CircuitRef a) { return std::make_shared<Circuit>(Circuit{Neg{std::move(a)}}); }
CircuitRef conj(CircuitRef a, CircuitRef b) {
  return std::make_shared<Circuit>(Circuit{And{std::move(a), std::move(b)}});
}
CircuitRef disj(CircuitRef a, CircuitRef b) {
  return std::make_shared<Circuit>(Circuit{Or{std::move(a), std::move(b)}});
}

bool circuit_equal(const CircuitRef& a, const CircuitRef& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Lit& x) { return x.value == std::get<Lit>(b->node).value; },
          [&](const Var& x) { return x.name == std::get<Var>(b->node).name; },
          [&](const Neg& x) { return circuit_equal(x.a, std::get<Neg>(b->node).a); },
          [&](const And& x) {
            const auto& y = std::get<And>(b->node);
            return circuit_equal(x.a, y.a) && circuit_equal(x.b, y.b);
          },
          [&](const Or& x) {
            const auto& y = std::get<Or>(b->node);
            return circuit_equal(x.a, y.a) && circuit_equal(x.b, y.b);
          },
      },
      a->node);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  CircuitRef run() {
    auto c = parse_or();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return c;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  CircuitRef parse_or() {
    auto c = parse_and();
    while (eat('|')) c = disj(c, parse_and());
    return c;
  }
  CircuitRef parse_and() {
    auto c = parse_unary();
    while (eat('&')) c = conj(c, parse_unary());
    return c;
  }
  CircuitRef parse_unary() {
    skip();
    if (pos_ == s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    std::size_t start = pos_;
    if (eat('!')) return neg(parse_unary());
    if (eat('(')) {
      auto c = parse_or();
      if (!eat(')')) throw SyntaxError(pos_, "expected ')'");
      return c;
    }
    if (!ident_start(s_[pos_])) throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string word(s_.substr(start, pos_ - start));
    if (word == "true") return lit(true);
    if (word == "false") return lit(false);
    return var(std::move(word));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(const Circuit& c) {
  if (std::holds_alternative<Or>(c.node)) return 1;
  if (std::holds_alternative<And>(c.node)) return 2;
  return 3;
}

void print(const CircuitRef& c, int min_prec, std::string& out) {
  bool parens = precedence(*c) < min_prec;
  if (parens) out += '(';
  std::visit(overloaded{
                 [&](const Lit& x) { out += x.value ? "true" : "false"; },
                 [&](const Var& x) { out += x.name; },
                 [&](const Neg& x) {
                   out += '!';
                   print(x.a, 3, out);
                 },
                 // Left-associative: the right operand needs a strictly
                 // tighter binding to avoid parentheses.
                 [&](const And& x) {
                   print(x.a, 2, out);
                   out += " & ";
                   print(x.b, 3, out);
                 },
                 [&](const Or& x) {
                   print(x.a, 1, out);
                   out += " | ";
                   print(x.b, 2, out);
                 },
             },
             c->node);
  if (parens) out += ')';
}

void collect_vars(const CircuitRef& c, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Lit&) {},
                 [&](const Var& x) { out.insert(x.name); },
                 [&](const Neg& x) { collect_vars(x.a, out); },
                 [&](const And& x) {
                   collect_vars(x.a, out);
                   collect_vars(x.b, out);
                 },
                 [&](const Or& x) {
                   collect_vars(x.a, out);
                   collect_vars(x.b, out);
                 },
             },
             c->node);
}

}  // namespace

CircuitRef parse_circuit(std::string_view text) { return Parser(text).run(); }

std::string pretty(const CircuitRef& c) {
  std::string out;
  print(c, 1, out);
  return out;
}

std::vector<std::string> variables_of(const CircuitRef& c) {
  std::set<std::string> vs;
  collect_vars(c, vs);
  return {vs.begin(), vs.end()};
}

sem::ReaderFn embed_shallow(const CircuitRef& c) {
  return std::visit(
      overloaded{
          [](const Lit& x) -> sem::ReaderFn {
            bool v = x.value;
            return [v](const sem::Env&) { return Value::boolean(v); };
          },
          [](const Var& x) -> sem::ReaderFn {
            std::string name = x.name;
            return [name](const sem::Env& env) {
              auto it = env.find(name);
              if (it == env.end()) throw Error(ErrorCode::UnboundVar, name);
              return it->second;
            };
          },
          [](const Neg& x) -> sem::ReaderFn {
            auto a = embed_shallow(x.a);
            return [a](const sem::Env& env) { return Value::boolean(!a(env).as_bool()); };
          },
          [](const And& x) -> sem::ReaderFn {
            auto a = embed_shallow(x.a), b = embed_shallow(x.b);
            return [a, b](const sem::Env& env) {
              bool l = a(env).as_bool();
              bool r = b(env).as_bool();
              return Value::boolean(l && r);
            };
          },
          [](const Or& x) -> sem::ReaderFn {
            auto a = embed_shallow(x.a), b = embed_shallow(x.b);
            return [a, b](const sem::Env& env) {
              bool l = a(env).as_bool();
              bool r = b(env).as_bool();
              return Value::boolean(l || r);
            };
          },
      },
      c->node);
}

CircuitRef embed_deep(const CircuitRef& c) { return c; }

namespace {

std::vector<std::string> padded(std::vector<std::string> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) vars.push_back("x");
  return vars;
}

}  // namespace

Embedder::Embedder(std::vector<std::string> vars)
    : vars_(padded(std::move(vars))),
      data_(EffectSig::make("DataEff", {OpSig{"GetData", {enum_type("var", vars_)}, bool_type(), {}}})),
      freer_(Vocabulary({KindTag::Pure, KindTag::Bind}, {data_})),
      reified_(Vocabulary({KindTag::Pure, KindTag::FMap, KindTag::LiftA2}, {data_})) {}

TermRef Embedder::embed_freer(const CircuitRef& c) const {
  const auto& b = freer_;
  auto ret = [&](bool v) { return b.pure(Value::boolean(v)); };
  return std::visit(
      overloaded{
          [&](const Lit& x) { return ret(x.value); },
          [&](const Var& x) {
            return b.bind(b.effect("DataEff", "GetData", {Value::symbol(x.name)}),
                          [&](const Value& v) { return ret(v.as_bool()); });
          },
          [&](const Neg& x) {
            return b.bind(embed_freer(x.a), [&](const Value& v) { return ret(!v.as_bool()); });
          },
          [&](const And& x) {
            auto l = embed_freer(x.a), r = embed_freer(x.b);
            return b.bind(l, [&](const Value& v) {
              return b.bind(r, [&](const Value& w) { return ret(v.as_bool() && w.as_bool()); });
            });
          },
          [&](const Or& x) {
            auto l = embed_freer(x.a), r = embed_freer(x.b);
            return b.bind(l, [&](const Value& v) {
              return b.bind(r, [&](const Value& w) { return ret(v.as_bool() || w.as_bool()); });
            });
          },
      },
      c->node);
}

TermRef Embedder::embed_reified(const CircuitRef& c) const {
  const auto& b = reified_;
  return std::visit(overloaded{
                        [&](const Lit& x) { return b.pure(Value::boolean(x.value)); },
                        [&](const Var& x) { return b.effect("DataEff", "GetData", {Value::symbol(x.name)}); },
                        [&](const Neg& x) { return b.fmap(fns::negb(), embed_reified(x.a)); },
                        [&](const And& x) {
                          return b.lift_a2(fns::andb(), embed_reified(x.a), embed_reified(x.b));
                        },
                        [&](const Or& x) { return b.lift_a2(fns::orb(), embed_reified(x.a), embed_reified(x.b)); },
                    },
                    c->node);
}

namespace {

Algebra<std::uint64_t> depth_algebra() {
  Algebra<std::uint64_t> a;
  a.pure = [](const Term&, const Value&) { return std::uint64_t{0}; };
  a.effect = [](const Term&, const EffectNode&) { return std::uint64_t{0}; };
  a.fmap = [](const Term&, const FnRef&, std::uint64_t d) { return d + 1; };
  a.lift_a2 = [](const Term&, const FnRef&, std::uint64_t l, std::uint64_t r) { return 1 + std::max(l, r); };
  return a;
}

Algebra<std::uint64_t> num_var_algebra() {
  Algebra<std::uint64_t> a;
  a.pure = [](const Term&, const Value&) { return std::uint64_t{0}; };
  a.effect = [](const Term&, const EffectNode&) { return std::uint64_t{1}; };
  a.fmap = [](const Term&, const FnRef&, std::uint64_t n) { return n; };
  a.lift_a2 = [](const Term&, const FnRef&, std::uint64_t l, std::uint64_t r) { return l + r; };
  return a;
}

}  // namespace

std::uint64_t app_depth(const TermRef& t) { return fold(t, depth_algebra()); }
std::uint64_t app_num_var(const TermRef& t) { return fold(t, num_var_algebra()); }

std::uint64_t deep_depth(const CircuitRef& c) {
  return std::visit(overloaded{
                        [](const Lit&) { return std::uint64_t{0}; },
                        [](const Var&) { return std::uint64_t{0}; },
                        [](const Neg& x) { return 1 + deep_depth(x.a); },
                        [](const And& x) { return 1 + std::max(deep_depth(x.a), deep_depth(x.b)); },
                        [](const Or& x) { return 1 + std::max(deep_depth(x.a), deep_depth(x.b)); },
                    },
                    c->node);
}

std::uint64_t deep_num_var(const CircuitRef& c) {
  return std::visit(overloaded{
                        [](const Lit&) { return std::uint64_t{0}; },
                        [](const Var&) { return std::uint64_t{1}; },
                        [](const Neg& x) { return deep_num_var(x.a); },
                        [](const And& x) { return deep_num_var(x.a) + deep_num_var(x.b); },
                        [](const Or& x) { return deep_num_var(x.a) + deep_num_var(x.b); },
                    },
                    c->node);
}

Profile profile_census(unsigned max_height, unsigned num_vars) {
  // Height-0 circuits: two literals and one Var per name.
  Profile p;
  p[{0, 0}] = 2;
  if (num_vars) p[{0, 1}] = num_vars;
  for (unsigned h = 1; h <= max_height; ++h) {
    Profile next;
    next[{0, 0}] = 2;
    if (num_vars) next[{0, 1}] = num_vars;
    for (const auto& [k, n] : p) next[{k.first + 1, k.second}] += n;
    for (const auto& [ka, na] : p)
      for (const auto& [kb, nb] : p) next[{1 + std::max(ka.first, kb.first), ka.second + kb.second}] += 2 * na * nb;
    p = std::move(next);
  }
  return p;
}

std::vector<CircuitRef> enumerate_circuits(unsigned max_height, const std::vector<std::string>& vars) {
  std::vector<CircuitRef> out{lit(false), lit(true)};
  for (const auto& v : vars) out.push_back(var(v));
  for (unsigned h = 1; h <= max_height; ++h) {
    std::vector<CircuitRef> next{lit(false), lit(true)};
    for (const auto& v : vars) next.push_back(var(v));
    for (const auto& a : out) next.push_back(neg(a));
    for (const auto& a : out)
      for (const auto& b : out) {
        next.push_back(conj(a, b));
        next.push_back(disj(a, b));
      }
    out = std::move(next);
  }
  return out;
}

CircuitRef random_circuit(std::mt19937_64& rng, unsigned max_depth, const std::vector<std::string>& vars) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::size_t kinds = max_depth == 0 ? 2 : 5;
  switch (pick(kinds)) {
    case 0: return lit(pick(2) == 1);
    case 1: return vars.empty() ? lit(pick(2) == 1) : var(vars[pick(vars.size())]);
    case 2: return neg(random_circuit(rng, max_depth - 1, vars));
    case 3: {
      auto a = random_circuit(rng, max_depth - 1, vars);
      return conj(a, random_circuit(rng, max_depth - 1, vars));
    }
    default: {
      auto a = random_circuit(rng, max_depth - 1, vars);
      return disj(a, random_circuit(rng, max_depth - 1, vars));
    }
  }
}

TermRef random_reified_term(const Embedder& e, std::mt19937_64& rng, unsigned max_depth) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const auto& b = e.reified();
  auto bits = [](std::size_t code, std::size_t n) {
    std::vector<Value> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(Value::boolean((code >> i) & 1));
    return t;
  };
  // Leaves only one time in four above the depth limit, so the suite
  // actually reaches deep terms.
  std::size_t k = max_depth == 0 ? pick(2) : (pick(4) == 0 ? pick(2) : 2 + pick(2));
  switch (k) {
    case 0: return b.pure(Value::boolean(pick(2) == 1));
    case 1: return b.effect("DataEff", "GetData", {Value::symbol(e.vars()[pick(e.vars().size())])});
    case 2: {
      std::size_t code = pick(4);
      auto f = Fn::from_table("u" + std::to_string(code), {bool_type()}, bool_type(), bits(code, 2));
      return b.fmap(f, random_reified_term(e, rng, max_depth - 1));
    }
    default: {
      std::size_t code = pick(16);
      auto f = Fn::from_table("b" + std::to_string(code), {bool_type(), bool_type()}, bool_type(), bits(code, 4));
      auto l = random_reified_term(e, rng, max_depth - 1);
      return b.lift_a2(f, l, random_reified_term(e, rng, max_depth - 1));
    }
  }
}

}  // namespace adverbs::circuit
