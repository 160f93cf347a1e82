#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace adverbs {

struct Unit {
  auto operator<=>(const Unit&) const = default;
};

struct Nat {
  std::uint64_t n = 0;
  auto operator<=>(const Nat&) const = default;
};

struct Symbol {
  std::string name;
  auto operator<=>(const Symbol&) const = default;
};

class Value;

/// Fields are kept sorted by name so that equal records compare equal.
using Record = std::vector<std::pair<std::string, Value>>;
using List = std::vector<Value>;

/// A first-order value living in some finite carrier.
///
/// Sums are encoded as single-field records tagged `inl`/`inr`, pairs as
/// records with `fst`/`snd`, and finite functions as the list of their
/// outputs in the canonical order of the domain carrier.
class Value {
 public:
  using Data = std::variant<Unit, bool, Nat, Symbol, Record, List>;

  Value() : data_(Unit{}) {}

  static Value unit() { return Value(Unit{}); }
  static Value boolean(bool b) { return Value(b); }
  static Value nat(std::uint64_t n) { return Value(Nat{n}); }
  static Value symbol(std::string s) { return Value(Symbol{std::move(s)}); }
  static Value record(Record fields);
  static Value list(List items) { return Value(std::move(items)); }

  static Value inl(Value v) { return record({{"inl", std::move(v)}}); }
  static Value inr(Value v) { return record({{"inr", std::move(v)}}); }
  static Value pair(Value a, Value b) { return record({{"fst", std::move(a)}, {"snd", std::move(b)}}); }

  bool is_unit() const { return std::holds_alternative<Unit>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_nat() const { return std::holds_alternative<Nat>(data_); }
  bool is_symbol() const { return std::holds_alternative<Symbol>(data_); }
  bool is_record() const { return std::holds_alternative<Record>(data_); }
  bool is_list() const { return std::holds_alternative<List>(data_); }
  bool is_inl() const;
  bool is_inr() const;

  bool as_bool() const;
  std::uint64_t as_nat() const;
  const std::string& as_symbol() const;
  const Record& as_record() const;
  const List& as_list() const;

  /// Field lookup on a record; nullopt when absent or not a record.
  std::optional<Value> field(const std::string& name) const;
  /// Payload of an `inl`/`inr` tagged value.
  const Value& payload() const;
  Value with_field(const std::string& name, Value v) const;

  const Data& data() const { return data_; }

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// Compact s-expression form used in canonical term text and reports.
  std::string to_string() const;

 private:
  template <class T>
  explicit Value(T v) : data_(std::move(v)) {}

  Data data_;
};

std::size_t hash_value(const Value& v);

struct ValueHash {
  std::size_t operator()(const Value& v) const { return hash_value(v); }
};

}  // namespace adverbs
