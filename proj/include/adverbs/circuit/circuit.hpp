#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adverbs/report.hpp"
#include "adverbs/semantics/domains.hpp"
#include "adverbs/term.hpp"
#include "adverbs/theory/derivation.hpp"

namespace adverbs::circuit {

struct Circuit;
using CircuitRef = std::shared_ptr<const Circuit>;

struct Lit {
  bool value;
};
struct Var {
  std::string name;
};
struct Neg {
  CircuitRef a;
};
struct And {
  CircuitRef a, b;
};
struct Or {
  CircuitRef a, b;
};

/// Source syntax of the boolean circuit language.
struct Circuit {
  std::variant<Lit, Var, Neg, And, Or> node;
};

CircuitRef lit(bool b);
CircuitRef var(std::string name);
CircuitRef neg(CircuitRef a);
CircuitRef conj(CircuitRef a, CircuitRef b);
CircuitRef disj(CircuitRef a, CircuitRef b);

bool circuit_equal(const CircuitRef& a, const CircuitRef& b);

/// Grammar: or := and ('|' and)*; and := unary ('&' unary)*;
/// unary := '!' unary | 'true' | 'false' | ident | '(' or ')'.
/// Throws SyntaxError with the byte offset of the offending token.
CircuitRef parse_circuit(std::string_view text);
/// Minimal parentheses; parse_circuit(pretty(c)) is structurally c.
std::string pretty(const CircuitRef& c);

/// Sorted, without duplicates.
std::vector<std::string> variables_of(const CircuitRef& c);

/// The shallow embedding: a reader over the variable environment.
sem::ReaderFn embed_shallow(const CircuitRef& c);
/// The deep embedding is the syntax tree itself.
CircuitRef embed_deep(const CircuitRef& c);

/// Builds the freer-monad and reified-applicative embeddings over one
/// DataEff signature, GetData(v : var) -> bool, with `var` the given names.
class Embedder {
 public:
  /// An empty list is padded with a single placeholder variable so the
  /// `var` carrier is never empty.
  explicit Embedder(std::vector<std::string> vars);

  const EffectRef& data_effect() const { return data_; }
  const std::vector<std::string>& vars() const { return vars_; }
  /// {Pure, Bind, DataEff}
  const TermBuilder& freer() const { return freer_; }
  /// {Pure, FMap, LiftA2, DataEff}
  const TermBuilder& reified() const { return reified_; }

  TermRef embed_freer(const CircuitRef& c) const;
  TermRef embed_reified(const CircuitRef& c) const;

 private:
  std::vector<std::string> vars_;
  EffectRef data_;
  TermBuilder freer_;
  TermBuilder reified_;
};

std::uint64_t app_depth(const TermRef& t);
std::uint64_t app_num_var(const TermRef& t);
std::uint64_t deep_depth(const CircuitRef& c);
std::uint64_t deep_num_var(const CircuitRef& c);

/// (depth, numVar) pairs with the number of circuits exhibiting each.
using Profile = std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>;

/// Profiles of every circuit of syntactic height at most `max_height` over
/// `num_vars` variables, computed compositionally from the depth/numVar
/// equations instead of by listing circuits. Counts must fit in 64 bits
/// (height 4 over 3 variables is about 2.2e16 circuits).
Profile profile_census(unsigned max_height, unsigned num_vars);

/// Every circuit of syntactic height at most `max_height` over `vars`.
std::vector<CircuitRef> enumerate_circuits(unsigned max_height, const std::vector<std::string>& vars);

/// Uniform choice of node kind at each level, leaves forced at depth 0.
CircuitRef random_circuit(std::mt19937_64& rng, unsigned max_depth, const std::vector<std::string>& vars);
/// Random boolean term over {Pure, FMap, LiftA2, DataEff}, with fmap/liftA2
/// functions drawn from every table on bool (not only negb/andb/orb).
TermRef random_reified_term(const Embedder& e, std::mt19937_64& rng, unsigned max_depth);

struct CheckOptions {
  /// Proof search depth for properties (1)-(3).
  unsigned depth = 3;
  /// Random reified terms for property (4).
  unsigned samples = 10000;
  unsigned max_term_depth = 8;
  std::uint64_t seed = 1;
};

/// The four questions, instantiated at t (and u for commutativity):
/// (1) t ≅ t∧t, (2) t ≅ t∧true, (3) t∧u ≅ u∧t, (4) numVar ≤ 2^depth.
/// Every equivalence gets one line per theory that was tried; (1) also
/// gets an oracle line under the fresh-outcome model.
std::vector<ReportLine> check_properties(const CircuitRef& t, const CircuitRef& u, const CheckOptions& opt = {});

}  // namespace adverbs::circuit
