#include <algorithm>
#include <set>
#include <sstream>

#include "adverbs/circuit/circuit.hpp"
#include "adverbs/semantics/traces.hpp"

namespace adverbs::circuit {

namespace {

using theory::Judgment;
using theory::TheoryId;

constexpr TheoryId kAllTheories[] = {
    TheoryId::Streamingly, TheoryId::Statically,  TheoryId::StaticallyInParallel, TheoryId::Conditionally,
    TheoryId::Dynamically, TheoryId::Repeatedly, TheoryId::Nondeterministically,
};

void rules_in(const theory::DerivationRef& d, std::set<std::string>& out) {
  out.insert(std::string(theory::to_string(d->rule)));
  for (const auto& p : d->premises) rules_in(p, out);
}

std::string rule_list(const theory::DerivationRef& d) {
  std::set<std::string> rs;
  rules_in(d, rs);
  std::string s;
  for (const auto& r : rs) s += (s.empty() ? "" : ", ") + r;
  return s;
}

ReportLine prove_line(const std::string& name, const theory::Theory& th, const TermBuilder& b, const Judgment& j,
                      unsigned depth) {
  ReportLine line{name + " [" + th.name() + "]", Status::Unknown, {}, {}};
  if (auto d = theory::prove_bounded(th, b, j, depth)) {
    line.status = Status::Proved;
    line.detail = "rules: " + rule_list(*d);
  } else {
    line.detail = "no derivation within depth " + std::to_string(depth);
  }
  return line;
}

/// Oracle line: under the fresh-outcome model every read picks its result
/// independently, so a difference in trace sets refutes equivalence.
ReportLine oracle_line(const std::string& name, const TermRef& l, const TermRef& r) {
  sem::OutcomeModel m;
  auto a = sem::trace_sem(l, m, 1);
  auto b = sem::trace_sem(r, m, 1);
  ReportLine line{name + " [oracle]", Status::Proved, {}, {}};
  for (const auto& x : a.behaviors)
    if (!b.contains(x)) {
      line.status = Status::Refuted;
      line.witness = "left only: " + x.to_string();
      return line;
    }
  for (const auto& x : b.behaviors)
    if (!a.contains(x)) {
      line.status = Status::Refuted;
      line.witness = "right only: " + x.to_string();
      return line;
    }
  line.detail = std::to_string(a.size()) + " behaviors agree";
  return line;
}

std::vector<std::string> merged_vars(const CircuitRef& t, const CircuitRef& u) {
  auto a = variables_of(t), b = variables_of(u);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool height_and_var(const TermRef& t) {
  auto d = app_depth(t);
  auto n = app_num_var(t);
  return d >= 63 || n <= (std::uint64_t{1} << d);
}

}  // namespace

std::vector<ReportLine> check_properties(const CircuitRef& t, const CircuitRef& u, const CheckOptions& opt) {
  Embedder e(merged_vars(t, u));
  const auto& b = e.reified();
  auto et = e.embed_reified(t);
  auto eu = e.embed_reified(u);
  std::vector<ReportLine> out;

  auto tt = b.lift_a2(fns::andb(), et, et);
  auto j1 = Judgment::equiv(et, tt);
  for (auto id : kAllTheories) out.push_back(prove_line("(1) t = t & t", theory::theory_of({id}), b, j1, opt.depth));
  out.push_back(oracle_line("(1) t = t & t", et, tt));

  auto j2 = Judgment::equiv(et, b.lift_a2(fns::andb(), et, b.pure(Value::boolean(true))));
  out.push_back(prove_line("(2) t = t & true", theory::theory_of({TheoryId::Statically}), b, j2, opt.depth));

  auto j3 = Judgment::equiv(b.lift_a2(fns::andb(), et, eu), b.lift_a2(fns::andb(), eu, et));
  out.push_back(prove_line("(3) t & u = u & t", theory::theory_of({TheoryId::Statically}), b, j3, opt.depth));
  out.push_back(
      prove_line("(3) t & u = u & t", theory::theory_of({TheoryId::StaticallyInParallel}), b, j3, opt.depth));

  ReportLine p4{"(4) numVar <= 2^depth", Status::Proved, {}, {}};
  std::mt19937_64 rng(opt.seed);
  std::size_t checked = 0;
  auto check = [&](const TermRef& x) {
    ++checked;
    if (height_and_var(x)) return true;
    p4.status = Status::Refuted;
    p4.witness = "depth " + std::to_string(app_depth(x)) + ", numVar " + std::to_string(app_num_var(x));
    return false;
  };
  if (check(et) && check(eu))
    for (unsigned i = 0; i < opt.samples; ++i)
      if (!check(random_reified_term(e, rng, opt.max_term_depth))) break;
  if (p4.status == Status::Proved)
    p4.detail = "t: depth " + std::to_string(app_depth(et)) + ", numVar " + std::to_string(app_num_var(et)) +
                "; " + std::to_string(checked) + " terms, 0 violations";
  out.push_back(p4);
  return out;
}

}  // namespace adverbs::circuit
