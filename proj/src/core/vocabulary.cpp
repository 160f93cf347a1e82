#include "adverbs/vocabulary.hpp"

#include <set>

#include "adverbs/error.hpp"

namespace adverbs {

EffectRef EffectSig::make(std::string name, std::vector<OpSig> ops) {
  std::set<std::string> seen;
  for (const auto& op : ops)
    if (!seen.insert(op.name).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate operation " + op.name + " in " + name);
  return EffectRef(new EffectSig(std::move(name), std::move(ops)));
}

const OpSig* EffectSig::find(const std::string& op) const {
  for (const auto& o : ops_)
    if (o.name == op) return &o;
  return nullptr;
}

bool same_signature(const EffectSig& a, const EffectSig& b) {
  if (&a == &b) return true;
  if (a.name() != b.name() || a.ops().size() != b.ops().size()) return false;
  for (std::size_t i = 0; i < a.ops().size(); ++i) {
    const auto& x = a.ops()[i];
    const auto& y = b.ops()[i];
    if (x.name != y.name || !same_type(x.result_type, y.result_type) ||
        x.arg_types.size() != y.arg_types.size())
      return false;
    for (std::size_t j = 0; j < x.arg_types.size(); ++j)
      if (!same_type(x.arg_types[j], y.arg_types[j])) return false;
  }
  return true;
}

std::string_view to_string(KindTag tag) {
  switch (tag) {
    case KindTag::Pure: return "Pure";
    case KindTag::FMap: return "FMap";
    case KindTag::LiftA2: return "LiftA2";
    case KindTag::SelectBy: return "SelectBy";
    case KindTag::Bind: return "Bind";
    case KindTag::KPlus: return "KPlus";
    case KindTag::Plus: return "Plus";
    case KindTag::Effect: return "Effect";
  }
  return "?";
}

std::string NodeKind::to_string() const {
  if (tag == KindTag::Effect) return "Effect(" + effect + ")";
  return std::string(adverbs::to_string(tag));
}

Vocabulary::Vocabulary(std::initializer_list<KindTag> tags, std::vector<EffectRef> effects) {
  for (auto t : tags) add(t);
  for (const auto& e : effects) add_effect(e);
}

Vocabulary& Vocabulary::add(KindTag tag) {
  if (tag == KindTag::Effect) throw Error(ErrorCode::InvalidArgument, "effects are added by signature");
  kinds_.insert(NodeKind::of(tag));
  return *this;
}

Vocabulary& Vocabulary::add_effect(const EffectRef& sig) {
  auto [it, inserted] = effects_.emplace(sig->name(), sig);
  if (!inserted && !same_signature(*it->second, *sig))
    throw Error(ErrorCode::DuplicateEffectName, "conflicting signatures for " + sig->name());
  kinds_.insert(NodeKind::effect_kind(sig->name()));
  return *this;
}

EffectRef Vocabulary::effect(const std::string& name) const {
  auto it = effects_.find(name);
  return it == effects_.end() ? nullptr : it->second;
}

bool operator==(const Vocabulary& a, const Vocabulary& b) {
  if (a.kinds_ != b.kinds_) return false;
  for (const auto& [name, sig] : a.effects_)
    if (!same_signature(*sig, *b.effects_.at(name))) return false;
  return true;
}

Vocabulary vocab_union(const Vocabulary& a, const Vocabulary& b) {
  Vocabulary out = a;
  for (const auto& k : b.kinds())
    if (k.tag != KindTag::Effect) out.add(k.tag);
  for (const auto& [name, sig] : b.effects()) out.add_effect(sig);
  return out;
}

}  // namespace adverbs
