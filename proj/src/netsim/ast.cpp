#include "adverbs/netsim/ast.hpp"

#include <cctype>
#include <set>

#include "adverbs/error.hpp"

namespace adverbs::net {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};

StmtRef seq(StmtRef a, StmtRef b) { return std::make_shared<Stmt>(Stmt{Seq{std::move(a), std::move(b)}}); }

namespace {

template <class N>
ExprRef mk(N n) {
  return std::make_shared<Expr>(Expr{std::move(n)});
}
template <class N>
StmtRef st(N n) {
  return std::make_shared<Stmt>(Stmt{std::move(n)});
}

struct Token {
  enum Kind { Ident, Nat, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  static const char* syms[] = {"::<-", "::++", "::=", ";;", "->", "==", "*", "(", ")", "."};
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    std::size_t start = i;
    unsigned char c = s[i];
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Nat, std::string(s.substr(start, i - start)), start});
      continue;
    }
    bool matched = false;
    for (const char* sym : syms) {
      std::string_view v(sym);
      if (s.substr(i, v.size()) == v) {
        out.push_back({Token::Sym, std::string(v), i});
        i += v.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(i, std::string("unexpected '") + s[i] + "'");
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"IF",  "THEN", "ELSE",   "END",  "FOR",    "IN",    "DO",   "Some",
                                       "Or",  "OneOf", "not",   "accept", "read", "write", "connection"};
  return k;
}

bool is_state(const std::string& s) { return s == "READING" || s == "WRITING" || s == "CLOSED"; }

class Parser {
 public:
  Parser(std::string_view text, bool spec) : toks_(tokenize(text)), spec_(spec) {}

  Program program() {
    Program p;
    p.body = sequence();
    if (accept(".")) p.terminated = true;
    if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& why) const { throw SyntaxError(peek().pos, why); }
  bool is(const char* text, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind != Token::End && t.kind != Token::Nat && t.text == text;
  }
  bool accept(const char* text) {
    if (!is(text)) return false;
    ++i_;
    return true;
  }
  void expect(const char* text) {
    if (!accept(text)) fail(std::string("expected '") + text + "'" + (peek().kind == Token::End ? " before end" : ""));
  }
  std::string ident() {
    const auto& t = peek();
    if (t.kind != Token::Ident || keywords().count(t.text)) fail("expected an identifier");
    ++i_;
    return t.text;
  }

  StmtRef sequence() {
    auto s = statement();
    if (accept(";;")) return seq(s, sequence());
    return s;
  }

  StmtRef parenthesized() {
    expect("(");
    auto s = sequence();
    expect(")");
    return s;
  }

  void spec_only(const char* what) {
    if (!spec_) fail(std::string(what) + " is only available in specifications");
  }

  StmtRef statement() {
    if (accept("(")) {
      auto s = sequence();
      expect(")");
      return s;
    }
    if (accept("IF")) {
      auto c = expr();
      expect("THEN");
      auto then = sequence();
      StmtRef els;
      if (accept("ELSE")) els = sequence();
      expect("END");
      return st(If{c, then, els});
    }
    if (accept("FOR")) {
      auto v = ident();
      expect("IN");
      auto l = ident();
      expect("DO");
      auto body = sequence();
      expect("END");
      return st(For{v, l, body});
    }
    if (is("Some")) {
      spec_only("Some");
      ++i_;
      return st(Some{parenthesized()});
    }
    if (is("Or")) {
      spec_only("Or");
      ++i_;
      auto a = parenthesized();
      return st(Or{a, parenthesized()});
    }
    if (is("OneOf")) {
      spec_only("OneOf");
      ++i_;
      expect("(");
      auto l = ident();
      expect(")");
      auto v = ident();
      return st(OneOf{l, v, parenthesized()});
    }
    LValue lhs{ident(), std::nullopt};
    if (accept("->")) lhs.field = ident();
    if (accept("::<-")) {
      if (accept("accept")) return st(EffAssign{lhs, NetOp::Accept, {}});
      if (accept("read")) return st(EffAssign{lhs, NetOp::Read, {atom()}});
      if (accept("write")) {
        auto a = atom();
        return st(EffAssign{lhs, NetOp::Write, {a, atom()}});
      }
      fail("expected a network operation");
    }
    if (accept("::=")) return st(Assign{lhs, expr()});
    if (accept("::++")) return st(Append{lhs, expr()});
    fail("expected '::<-', '::=' or '::++'");
  }

  ExprRef expr() {
    auto a = unary();
    if (accept("==")) return mk(EqExpr{a, unary()});
    return a;
  }

  ExprRef unary() {
    if (accept("not")) return mk(NotExpr{unary()});
    return atom();
  }

  ExprRef atom() {
    const auto& t = peek();
    if (t.kind == Token::Nat) {
      ++i_;
      return mk(NatLit{std::stoull(t.text)});
    }
    if (accept("(")) {
      auto e = expr();
      expect(")");
      return e;
    }
    if (accept("*")) return mk(VarRead{ident(), true});
    if (accept("connection")) {
      auto id = atom();
      return mk(MkConn{id, atom()});
    }
    if (t.kind == Token::Ident && is_state(t.text)) {
      ++i_;
      return mk(StateLit{t.text});
    }
    auto name = ident();
    if (accept("->")) return mk(FieldRead{name, ident()});
    return mk(VarRead{name, false});
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  bool spec_;
};

bool is_atom(const ExprRef& e) {
  return !std::holds_alternative<EqExpr>(e->node) && !std::holds_alternative<NotExpr>(e->node) &&
         !std::holds_alternative<MkConn>(e->node);
}

std::string atom_text(const ExprRef& e) { return is_atom(e) ? pretty(e) : "(" + pretty(e) + ")"; }

std::string lvalue_text(const LValue& l) { return l.field ? l.var + "->" + *l.field : l.var; }

void indent(std::string& out, int depth) { out.append(2 * depth, ' '); }

void print(const StmtRef& s, int depth, std::string& out);

void print_block(const StmtRef& s, int depth, std::string& out) {
  out += '\n';
  print(s, depth, out);
}

void print(const StmtRef& s, int depth, std::string& out) {
  std::visit(overloaded{
                 [&](const EffAssign& x) {
                   indent(out, depth);
                   out += lvalue_text(x.lhs) + " ::<- ";
                   out += x.op == NetOp::Accept ? "accept" : x.op == NetOp::Read ? "read" : "write";
                   for (const auto& a : x.args) out += " " + atom_text(a);
                 },
                 [&](const Assign& x) {
                   indent(out, depth);
                   out += lvalue_text(x.lhs) + " ::= " + pretty(x.e);
                 },
                 [&](const Append& x) {
                   indent(out, depth);
                   out += lvalue_text(x.lhs) + " ::++ " + pretty(x.e);
                 },
                 [&](const If& x) {
                   indent(out, depth);
                   out += "IF " + atom_text(x.cond) + " THEN";
                   print_block(x.then, depth + 1, out);
                   if (x.els) {
                     out += '\n';
                     indent(out, depth);
                     out += "ELSE";
                     print_block(x.els, depth + 1, out);
                   }
                   out += '\n';
                   indent(out, depth);
                   out += "END";
                 },
                 [&](const For& x) {
                   indent(out, depth);
                   out += "FOR " + x.var + " IN " + x.list + " DO";
                   print_block(x.body, depth + 1, out);
                   out += '\n';
                   indent(out, depth);
                   out += "END";
                 },
                 [&](const Seq& x) {
                   // Sequences nest to the right; a left-nested one needs parentheses.
                   if (std::holds_alternative<Seq>(x.a->node)) {
                     indent(out, depth);
                     out += "(\n";
                     print(x.a, depth + 1, out);
                     out += ")";
                   } else {
                     print(x.a, depth, out);
                   }
                   out += " ;;\n";
                   print(x.b, depth, out);
                 },
                 [&](const Some& x) {
                   indent(out, depth);
                   out += "Some (\n";
                   print(x.a, depth + 1, out);
                   out += ")";
                 },
                 [&](const Or& x) {
                   indent(out, depth);
                   out += "Or (\n";
                   print(x.a, depth + 1, out);
                   out += ")\n";
                   indent(out, depth);
                   out += "   (\n";
                   print(x.b, depth + 1, out);
                   out += ")";
                 },
                 [&](const OneOf& x) {
                   indent(out, depth);
                   out += "OneOf (" + x.list + ") " + x.var + " (\n";
                   print(x.body, depth + 1, out);
                   out += ")";
                 },
             },
             s->node);
}

template <class T>
const T& same(const Stmt& s) {
  return std::get<T>(s.node);
}

}  // namespace

Program parse_netimp(std::string_view text) { return Parser(text, false).program(); }
Program parse_netspec(std::string_view text) { return Parser(text, true).program(); }

std::string pretty(const ExprRef& e) {
  return std::visit(overloaded{
                        [](const NatLit& x) { return std::to_string(x.n); },
                        [](const StateLit& x) { return x.name; },
                        [](const VarRead& x) { return (x.deref ? "*" : "") + x.name; },
                        [](const FieldRead& x) { return x.ptr + "->" + x.field; },
                        [](const EqExpr& x) { return atom_text(x.a) + " == " + atom_text(x.b); },
                        [](const NotExpr& x) { return "not " + atom_text(x.a); },
                        [](const MkConn& x) { return "connection " + atom_text(x.id) + " " + atom_text(x.state); },
                    },
                    e->node);
}

std::string pretty(const StmtRef& s) {
  std::string out;
  print(s, 0, out);
  return out;
}

std::string pretty(const Program& p) { return pretty(p.body) + (p.terminated ? "." : ""); }

bool expr_equal(const ExprRef& a, const ExprRef& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(overloaded{
                        [&](const NatLit& x) { return x.n == std::get<NatLit>(b->node).n; },
                        [&](const StateLit& x) { return x.name == std::get<StateLit>(b->node).name; },
                        [&](const VarRead& x) {
                          const auto& y = std::get<VarRead>(b->node);
                          return x.name == y.name && x.deref == y.deref;
                        },
                        [&](const FieldRead& x) {
                          const auto& y = std::get<FieldRead>(b->node);
                          return x.ptr == y.ptr && x.field == y.field;
                        },
                        [&](const EqExpr& x) {
                          const auto& y = std::get<EqExpr>(b->node);
                          return expr_equal(x.a, y.a) && expr_equal(x.b, y.b);
                        },
                        [&](const NotExpr& x) { return expr_equal(x.a, std::get<NotExpr>(b->node).a); },
                        [&](const MkConn& x) {
                          const auto& y = std::get<MkConn>(b->node);
                          return expr_equal(x.id, y.id) && expr_equal(x.state, y.state);
                        },
                    },
                    a->node);
}

bool stmt_equal(const StmtRef& a, const StmtRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  auto exprs = [](const std::vector<ExprRef>& x, const std::vector<ExprRef>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!expr_equal(x[i], y[i])) return false;
    return true;
  };
  const Stmt& o = *b;
  return std::visit(
      overloaded{
          [&](const EffAssign& x) {
            const auto& y = same<EffAssign>(o);
            return x.lhs == y.lhs && x.op == y.op && exprs(x.args, y.args);
          },
          [&](const Assign& x) {
            const auto& y = same<Assign>(o);
            return x.lhs == y.lhs && expr_equal(x.e, y.e);
          },
          [&](const Append& x) {
            const auto& y = same<Append>(o);
            return x.lhs == y.lhs && expr_equal(x.e, y.e);
          },
          [&](const If& x) {
            const auto& y = same<If>(o);
            return expr_equal(x.cond, y.cond) && stmt_equal(x.then, y.then) && stmt_equal(x.els, y.els);
          },
          [&](const For& x) {
            const auto& y = same<For>(o);
            return x.var == y.var && x.list == y.list && stmt_equal(x.body, y.body);
          },
          [&](const Seq& x) {
            const auto& y = same<Seq>(o);
            return stmt_equal(x.a, y.a) && stmt_equal(x.b, y.b);
          },
          [&](const Some& x) { return stmt_equal(x.a, same<Some>(o).a); },
          [&](const Or& x) {
            const auto& y = same<Or>(o);
            return stmt_equal(x.a, y.a) && stmt_equal(x.b, y.b);
          },
          [&](const OneOf& x) {
            const auto& y = same<OneOf>(o);
            return x.list == y.list && x.var == y.var && stmt_equal(x.body, y.body);
          },
      },
      a->node);
}

bool program_equal(const Program& a, const Program& b) {
  return a.terminated == b.terminated && stmt_equal(a.body, b.body);
}

bool same_modulo_whitespace(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  };
  return strip(a) == strip(b);
}

}  // namespace adverbs::net
