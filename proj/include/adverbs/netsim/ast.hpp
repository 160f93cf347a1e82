#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adverbs::net {

struct Expr;
using ExprRef = std::shared_ptr<const Expr>;

struct NatLit {
  std::uint64_t n;
};
/// READING, WRITING or CLOSED.
struct StateLit {
  std::string name;
};
/// `*x` or a bare `x`; both read the variable's current value.
struct VarRead {
  std::string name;
  bool deref;
};
/// `y->field`, with y holding a pointer.
struct FieldRead {
  std::string ptr;
  std::string field;
};
struct EqExpr {
  ExprRef a, b;
};
struct NotExpr {
  ExprRef a;
};
/// `connection id state`
struct MkConn {
  ExprRef id, state;
};

struct Expr {
  std::variant<NatLit, StateLit, VarRead, FieldRead, EqExpr, NotExpr, MkConn> node;
};

/// `x` or `y->field`.
struct LValue {
  std::string var;
  std::optional<std::string> field;
  bool operator==(const LValue&) const = default;
};

enum class NetOp { Accept, Read, Write };

struct Stmt;
using StmtRef = std::shared_ptr<const Stmt>;

/// `x ::<- op args`
struct EffAssign {
  LValue lhs;
  NetOp op;
  std::vector<ExprRef> args;
};
/// `x ::= e`
struct Assign {
  LValue lhs;
  ExprRef e;
};
/// `x ::++ e`
struct Append {
  LValue lhs;
  ExprRef e;
};
struct If {
  ExprRef cond;
  StmtRef then;
  StmtRef els;  // null when there is no ELSE
};
struct For {
  std::string var;
  std::string list;
  StmtRef body;
};
/// `a ;; b`, right-nested when read from text.
struct Seq {
  StmtRef a, b;
};
struct Some {
  StmtRef a;
};
struct Or {
  StmtRef a, b;
};
/// `OneOf (list) var (body)`
struct OneOf {
  std::string list;
  std::string var;
  StmtRef body;
};

struct Stmt {
  std::variant<EffAssign, Assign, Append, If, For, Seq, Some, Or, OneOf> node;
};

struct Program {
  StmtRef body;
  /// The listing ends with a full stop.
  bool terminated = false;
};

StmtRef seq(StmtRef a, StmtRef b);

/// Spec constructs (Some, Or, OneOf) are rejected with SyntaxError.
Program parse_netimp(std::string_view text);
Program parse_netspec(std::string_view text);

std::string pretty(const Program& p);
std::string pretty(const StmtRef& s);
std::string pretty(const ExprRef& e);

bool expr_equal(const ExprRef& a, const ExprRef& b);
bool stmt_equal(const StmtRef& a, const StmtRef& b);
bool program_equal(const Program& a, const Program& b);

/// Whitespace-insensitive comparison of listings.
bool same_modulo_whitespace(std::string_view a, std::string_view b);

}  // namespace adverbs::net
