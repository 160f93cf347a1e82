#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "adverbs/finite_type.hpp"

namespace adverbs {

struct OpSig {
  std::string name;
  std::vector<TypeRef> arg_types;
  TypeRef result_type;
  /// Optional argument-dependent narrowing of `result_type` (e.g. a memory
  /// read whose carrier depends on the reference). Must return a type whose
  /// carrier is a subset of `result_type`'s.
  std::function<TypeRef(std::span<const Value>)> refine_result;

  TypeRef result_type_for(std::span<const Value> args) const {
    return refine_result ? refine_result(args) : result_type;
  }
};

class EffectSig;
using EffectRef = std::shared_ptr<const EffectSig>;

/// A deeply embedded effect: a name and its uninterpreted operations.
class EffectSig {
 public:
  static EffectRef make(std::string name, std::vector<OpSig> ops);

  const std::string& name() const { return name_; }
  const std::vector<OpSig>& ops() const { return ops_; }
  const OpSig* find(const std::string& op) const;

 private:
  EffectSig(std::string name, std::vector<OpSig> ops) : name_(std::move(name)), ops_(std::move(ops)) {}
  std::string name_;
  std::vector<OpSig> ops_;
};

/// Structural equality of signatures (names and declared types).
bool same_signature(const EffectSig& a, const EffectSig& b);

enum class KindTag { Pure, FMap, LiftA2, SelectBy, Bind, KPlus, Plus, Effect };

std::string_view to_string(KindTag tag);

struct NodeKind {
  KindTag tag = KindTag::Pure;
  std::string effect;  // signature name, Effect kinds only

  static NodeKind of(KindTag t) { return {t, {}}; }
  static NodeKind effect_kind(std::string name) { return {KindTag::Effect, std::move(name)}; }

  auto operator<=>(const NodeKind&) const = default;
  std::string to_string() const;
};

/// The set of node kinds (and registered effect signatures) a term may use.
/// Composition of adverbs and effects is set union.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<KindTag> tags, std::vector<EffectRef> effects = {});

  Vocabulary& add(KindTag tag);
  /// Throws DuplicateEffectName if a different signature is registered
  /// under the same name.
  Vocabulary& add_effect(const EffectRef& sig);

  bool contains(const NodeKind& k) const { return kinds_.count(k) != 0; }
  bool has(KindTag tag) const { return tag != KindTag::Effect && contains(NodeKind::of(tag)); }
  EffectRef effect(const std::string& name) const;

  const std::set<NodeKind>& kinds() const { return kinds_; }
  const std::map<std::string, EffectRef>& effects() const { return effects_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b);

 private:
  std::set<NodeKind> kinds_;
  std::map<std::string, EffectRef> effects_;
};

Vocabulary vocab_union(const Vocabulary& a, const Vocabulary& b);

}  // namespace adverbs
