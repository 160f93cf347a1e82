#include "adverbs/sexpr.hpp"

#include <cctype>
#include <charconv>

#include "adverbs/error.hpp"

namespace adverbs {

std::string SExpr::to_string() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].to_string();
  }
  return out + ")";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return i_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError(i_, "unexpected end of input");
    SExpr e;
    e.position = i_;
    if (s_[i_] == ')') throw SyntaxError(i_, "unexpected ')'");
    if (s_[i_] == '(') {
      e.is_atom = false;
      ++i_;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw SyntaxError(e.position, "unclosed '('");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != ';')
      ++i_;
    e.atom = std::string(s_.substr(start, i_ - start));
    return e;
  }

  std::size_t pos() const { return i_; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.done()) throw SyntaxError(r.pos(), "trailing input");
  return e;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

Value read_value(const SExpr& e) {
  if (e.is_atom) {
    const auto& a = e.atom;
    if (a == "tt") return Value::unit();
    if (a == "true") return Value::boolean(true);
    if (a == "false") return Value::boolean(false);
    if (!a.empty() && std::isdigit(static_cast<unsigned char>(a[0]))) {
      std::uint64_t n = 0;
      auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), n);
      if (ec != std::errc() || p != a.data() + a.size()) throw SyntaxError(e.position, "bad number " + a);
      return Value::nat(n);
    }
    return Value::symbol(a);
  }
  if (e.head_is("list")) {
    List items;
    for (std::size_t i = 1; i < e.items.size(); ++i) items.push_back(read_value(e.items[i]));
    return Value::list(std::move(items));
  }
  if (e.head_is("record")) {
    Record fields;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto& f = e.items[i];
      if (!f.is_list() || f.items.size() != 2 || !f.items[0].is_atom)
        throw SyntaxError(f.position, "record field must be (name value)");
      fields.emplace_back(f.items[0].atom, read_value(f.items[1]));
    }
    return Value::record(std::move(fields));
  }
  throw SyntaxError(e.position, "not a value: " + e.to_string());
}

}  // namespace adverbs
