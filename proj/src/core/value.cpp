#include "adverbs/value.hpp"

#include <algorithm>
#include <functional>
#include <type_traits>

#include "adverbs/error.hpp"

namespace adverbs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEffectName: return "DuplicateEffectName";
    case ErrorCode::KindNotInVocabulary: return "KindNotInVocabulary";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::MissingAlgebraCase: return "MissingAlgebraCase";
    case ErrorCode::OpaqueFunctionInSideCondition: return "OpaqueFunctionInSideCondition";
    case ErrorCode::RuleNotInTheory: return "RuleNotInTheory";
    case ErrorCode::SideConditionFails: return "SideConditionFails";
    case ErrorCode::UnboundVar: return "UnboundVar";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ScopeError: return "ScopeError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Value Value::record(Record fields) {
  std::sort(fields.begin(), fields.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return Value(std::move(fields));
}

bool Value::is_inl() const {
  const auto* r = std::get_if<Record>(&data_);
  return r && r->size() == 1 && r->front().first == "inl";
}

bool Value::is_inr() const {
  const auto* r = std::get_if<Record>(&data_);
  return r && r->size() == 1 && r->front().first == "inr";
}

namespace {
template <class T>
const T& expect(const Value::Data& d, const char* what) {
  if (const auto* p = std::get_if<T>(&d)) return *p;
  throw Error(ErrorCode::TypeMismatch, std::string("value is not a ") + what);
}
}  // namespace

bool Value::as_bool() const { return expect<bool>(data_, "boolean"); }
std::uint64_t Value::as_nat() const { return expect<Nat>(data_, "natural").n; }
const std::string& Value::as_symbol() const { return expect<Symbol>(data_, "symbol").name; }
const Record& Value::as_record() const { return expect<Record>(data_, "record"); }
const List& Value::as_list() const { return expect<List>(data_, "list"); }

std::optional<Value> Value::field(const std::string& name) const {
  const auto* r = std::get_if<Record>(&data_);
  if (!r) return std::nullopt;
  for (const auto& [k, v] : *r)
    if (k == name) return v;
  return std::nullopt;
}

const Value& Value::payload() const {
  const auto& r = as_record();
  if (r.size() != 1) throw Error(ErrorCode::TypeMismatch, "value is not a tagged sum");
  return r.front().second;
}

Value Value::with_field(const std::string& name, Value v) const {
  Record r = as_record();
  for (auto& [k, old] : r) {
    if (k == name) {
      old = std::move(v);
      return Value(std::move(r));
    }
  }
  r.emplace_back(name, std::move(v));
  return record(std::move(r));
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() <=> b.data_.index();
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.data_);
        if constexpr (std::is_same_v<T, Record>) {
          for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
            if (auto c = x[i].first <=> y[i].first; c != 0) return c;
            if (auto c = x[i].second <=> y[i].second; c != 0) return c;
          }
          return x.size() <=> y.size();
        } else if constexpr (std::is_same_v<T, List>) {
          for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
            if (auto c = x[i] <=> y[i]; c != 0) return c;
          return x.size() <=> y.size();
        } else if constexpr (std::is_same_v<T, bool>) {
          return static_cast<int>(x) <=> static_cast<int>(y);
        } else {
          return x <=> y;
        }
      },
      a.data_);
}

std::string Value::to_string() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return "tt";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Nat>) {
          return std::to_string(x.n);
        } else if constexpr (std::is_same_v<T, Symbol>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, Record>) {
          std::string out = "(record";
          for (const auto& [k, v] : x) out += " (" + k + " " + v.to_string() + ")";
          return out + ")";
        } else {
          std::string out = "(list";
          for (const auto& v : x) out += " " + v.to_string();
          return out + ")";
        }
      },
      data_);
}

}  // namespace adverbs

namespace adverbs {

namespace {
std::size_t mix(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

std::size_t hash_value(const Value& v) {
  std::size_t h = v.data().index();
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          h = mix(h, x);
        } else if constexpr (std::is_same_v<T, Nat>) {
          h = mix(h, std::hash<std::uint64_t>{}(x.n));
        } else if constexpr (std::is_same_v<T, Symbol>) {
          h = mix(h, std::hash<std::string>{}(x.name));
        } else if constexpr (std::is_same_v<T, Record>) {
          for (const auto& [k, f] : x) h = mix(mix(h, std::hash<std::string>{}(k)), hash_value(f));
        } else if constexpr (std::is_same_v<T, List>) {
          for (const auto& e : x) h = mix(h, hash_value(e));
        }
      },
      v.data());
  return h;
}

}  // namespace adverbs
