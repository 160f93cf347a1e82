#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adverbs/netsim/ast.hpp"
#include "adverbs/report.hpp"
#include "adverbs/semantics/traces.hpp"
#include "adverbs/term.hpp"
#include "adverbs/theory/derivation.hpp"

namespace adverbs::net {

struct NetConfig {
  std::vector<std::uint64_t> accept_outcomes{0, 1, 2};
  std::vector<std::uint64_t> read_outcomes{0, 1, 2};
  std::vector<std::uint64_t> write_outcomes{0, 1};
  /// Initial contents of `conns` as (id, state) pairs.
  std::vector<std::pair<std::uint64_t, std::string>> conns{{1, "READING"}, {2, "WRITING"}};
  /// Longest list a program may build; 0 means one more than `conns`.
  /// An append beyond it blocks the run.
  std::size_t max_list = 0;

  /// `n` connections with ids 1..n, alternately READING and WRITING.
  static NetConfig with_conns(std::size_t n);
  std::size_t list_bound() const { return max_list ? max_list : conns.size() + 1; }
};

/// Memory references are paths: (x) for a variable, (xs i) for an element of
/// a list variable, (xs i f) for a field of such an element. Pointers stored
/// in loop variables are element paths.
Value path(const std::string& var);
Value element_path(const std::string& list, std::uint64_t index);
Value field_path(const Value& element, const std::string& field);

/// The variable types used by a set of programs, inferred from assignments.
struct Layout {
  TypeRef nat, state, conn, boolean;
  std::map<std::string, TypeRef> vars;
  /// Element type of every list-typed variable.
  std::map<std::string, TypeRef> lists;
  /// Pointer type for each list: its element paths.
  std::map<std::string, TypeRef> pointers;
  TypeRef refs;    // every path
  TypeRef values;  // every storable value

  /// Type of the value stored at `path`; null if the path is not valid.
  TypeRef type_at(const Value& path) const;
};

/// The server vocabulary, embeddings of NetImp/NetSpec into it and the
/// store-based outcome model. Embedded statements are cached by their
/// printed text, so fragments shared between programs are shared terms.
class Server {
 public:
  /// `programs` fixes the variable layout; every program embedded later
  /// must use only these variables. Throws ScopeError.
  Server(NetConfig cfg, const std::vector<Program>& programs);

  const NetConfig& config() const { return cfg_; }
  const Layout& layout() const { return layout_; }
  const TermBuilder& builder() const { return builder_; }

  TermRef embed(const Program& p);
  TermRef embed(const StmtRef& s);

  /// Network outcomes from the configuration; memory through the store,
  /// with its events recorded in traces.
  sem::OutcomeModel outcome_model() const;
  sem::Store initial_store() const;

 private:
  struct Compiled;
  Compiled expr(const ExprRef& e);
  TermRef then(const Compiled& c, const std::function<TermRef(const Value&)>& k);
  TermRef assign_to(const LValue& lhs, const Value& v);
  TermRef get(const Value& p) const;
  TermRef set(const Value& p, const Value& v) const;
  TermRef unit() const;
  TermRef stmt(const StmtRef& s);
  TermRef loop(const std::string& list, const std::string& var, const StmtRef& body, bool choice);

  NetConfig cfg_;
  Layout layout_;
  TermBuilder builder_;
  std::unordered_map<std::string, TermRef> cache_;
};

/// The five layers. L1-L3 are assembled from the fragments of Impl:
/// A = its first two statements, B and C = the two statements of its loop.
struct Layers {
  Program impl, l1, l2, l3, spec;
  StmtRef a, b, c;
};
Layers layers(const Program& impl, const Program& spec);

struct Fixtures {
  Layers programs;
  TermRef impl, l1, l2, l3, spec;
};
Fixtures embed_layers(Server& server, const Layers& programs);

/// Derivations for each link, in the union of Dynamically, Repeatedly and
/// Nondeterministically. They follow the structure of the layers.
theory::DerivationRef derive_impl_l1(const Server& s, const Fixtures& f);
theory::DerivationRef derive_l1_l2(const Server& s, const Fixtures& f);
theory::DerivationRef derive_l2_l3(const Server& s, const Fixtures& f);
theory::DerivationRef derive_l3_spec(const Server& s, const Fixtures& f);

theory::Theory server_theory();

struct LinkReport {
  std::string name;
  Status status = Status::Unknown;
  bool derivation_ok = false;
  std::string derivation_note;
  sem::RefinementCheck oracle;
  unsigned bound_l = 0, bound_r = 0;
};

/// Impl ⊑ L1 ⊑ L2 ⊑ L3 ⊑ Spec, each by derivation and by bounded oracle.
/// A link is PROVED when both agree and REFUTED when there is no accepted
/// derivation and the oracle finds a witness. A witness against an accepted
/// derivation means bound_r was too small, which is UNKNOWN.
std::vector<LinkReport> verify_chain(Server& server, const Fixtures& f, unsigned bound_l, unsigned bound_r);
/// Spec ⊑ Impl, by oracle only.
LinkReport check_reverse(Server& server, const Fixtures& f, unsigned bound_l, unsigned bound_r);

/// Replays the memory events of `trace` from the initial store and checks
/// every connection state update against READING -> {WRITING, CLOSED},
/// WRITING -> CLOSED, CLOSED -> CLOSED. Returns a description of the first
/// bad transition.
std::optional<std::string> state_machine_violation(const Server& s, const sem::Trace& trace);

}  // namespace adverbs::net
