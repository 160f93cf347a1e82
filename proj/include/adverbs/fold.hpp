#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "adverbs/error.hpp"
#include "adverbs/term.hpp"

namespace adverbs {

template <class D>
class Folder;

/// The folded continuation of a Bind node: a D-value per carrier element,
/// computed on demand and shared with the rest of the fold.
template <class D>
class Pointwise {
 public:
  Pointwise(std::shared_ptr<Folder<D>> folder, const Continuation* k) : folder_(std::move(folder)), k_(k) {}

  D operator()(const Value& v) const { return folder_->fold(k_->operator()(v)); }
  const TypeRef& domain() const { return k_->domain(); }
  const Continuation& continuation() const { return *k_; }

  std::vector<D> all() const {
    std::vector<D> out;
    for (const auto& v : k_->domain()->carrier()) out.push_back((*this)(v));
    return out;
  }

 private:
  std::shared_ptr<Folder<D>> folder_;
  const Continuation* k_;
};

/// One case per node kind. Effect cases are looked up by signature name
/// first, then fall back to `effect`.
template <class D>
struct Algebra {
  using EffectCase = std::function<D(const Term&, const EffectNode&)>;

  std::function<D(const Term&, const Value&)> pure;
  std::function<D(const Term&, const FnRef&, const D&)> fmap;
  std::function<D(const Term&, const FnRef&, const D&, const D&)> lift_a2;
  std::function<D(const Term&, const FnRef&, const D&, const D&)> select_by;
  std::function<D(const Term&, const D&, const Pointwise<D>&)> bind;
  std::function<D(const Term&, const D&)> kplus;
  std::function<D(const Term&, const D&, const D&)> plus;
  std::map<std::string, EffectCase> effects;
  EffectCase effect;
};

template <class D>
class Folder : public std::enable_shared_from_this<Folder<D>> {
 public:
  explicit Folder(const Algebra<D>& alg) : alg_(alg) {}

  D fold(const TermRef& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    D d = step(t);
    keep_.push_back(t);
    memo_.emplace(t.get(), d);
    return d;
  }

 private:
  template <class F>
  const F& need(const F& f, const Term& t) {
    if (!f) throw Error(ErrorCode::MissingAlgebraCase, t.kind().to_string());
    return f;
  }

  D step(const TermRef& tr) {
    const Term& t = *tr;
    switch (t.tag()) {
      case KindTag::Pure:
        return need(alg_.pure, t)(t, t.get<PureNode>().value);
      case KindTag::FMap: {
        const auto& n = t.get<FMapNode>();
        return need(alg_.fmap, t)(t, n.g, fold(n.a));
      }
      case KindTag::LiftA2: {
        const auto& n = t.get<LiftA2Node>();
        auto& f = need(alg_.lift_a2, t);
        D a = fold(n.a);
        return f(t, n.f, a, fold(n.b));
      }
      case KindTag::SelectBy: {
        const auto& n = t.get<SelectByNode>();
        auto& f = need(alg_.select_by, t);
        D a = fold(n.a);
        return f(t, n.f, a, fold(n.b));
      }
      case KindTag::Bind: {
        const auto& n = t.get<BindNode>();
        auto& f = need(alg_.bind, t);
        return f(t, fold(n.m), Pointwise<D>(this->shared_from_this(), &n.k));
      }
      case KindTag::KPlus:
        return need(alg_.kplus, t)(t, fold(t.get<KPlusNode>().a));
      case KindTag::Plus: {
        const auto& n = t.get<PlusNode>();
        auto& f = need(alg_.plus, t);
        D a = fold(n.a);
        return f(t, a, fold(n.b));
      }
      case KindTag::Effect: {
        const auto& n = t.get<EffectNode>();
        if (auto it = alg_.effects.find(n.sig->name()); it != alg_.effects.end()) return it->second(t, n);
        return need(alg_.effect, t)(t, n);
      }
    }
    throw Error(ErrorCode::MissingAlgebraCase, t.kind().to_string());
  }

  Algebra<D> alg_;
  std::unordered_map<const Term*, D> memo_;
  std::vector<TermRef> keep_;
};

/// Bottom-up replacement of every node by its algebra case. Shared subterms
/// are folded once. Continuations are folded lazily, per element.
template <class D>
D fold(const TermRef& t, const Algebra<D>& alg) {
  auto folder = std::make_shared<Folder<D>>(alg);
  return folder->fold(t);
}

}  // namespace adverbs
