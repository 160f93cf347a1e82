// One line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "adverbs/circuit/circuit.hpp"
#include "adverbs/haxl/haxl.hpp"
#include "adverbs/netsim/server.hpp"
#include "adverbs/semantics/traces.hpp"
#include "adverbs/term_io.hpp"
#include "support/powerset_laws.hpp"
#include "support/soundness.hpp"

using namespace adverbs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(ADVERBS_DATA_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kVars = {"x", "y", "z"};

Outcome circuit_properties() {
  using namespace circuit;
  Outcome o;
  CheckOptions opt;
  opt.samples = 10000;
  opt.max_term_depth = 8;
  auto lines = check_properties(var("x"), var("y"), opt);
  auto status = [&](const std::string& name) {
    for (const auto& l : lines)
      if (l.name == name) return l;
    return ReportLine{name, Status::Unknown, "", "missing"};
  };
  for (const char* th : {"Streamingly", "Statically", "StaticallyInParallel", "Conditionally", "Dynamically",
                         "Repeatedly", "Nondeterministically"})
    o.require(status(std::string("(1) t = t & t [") + th + "]").status == Status::Unknown,
              std::string("(1) not UNKNOWN in ") + th);
  auto oracle = status("(1) t = t & t [oracle]");
  o.require(oracle.status == Status::Refuted && !oracle.witness.empty(), "(1) not refuted by the oracle");
  auto p2 = status("(2) t = t & true [Statically]");
  o.require(p2.status == Status::Proved && p2.detail.find("AppRightId") != std::string::npos,
            "(2) not proved by right identity");
  o.require(status("(3) t & u = u & t [Statically]").status == Status::Unknown, "(3) decided in Statically");
  o.require(status("(3) t & u = u & t [StaticallyInParallel]").status == Status::Proved,
            "(3) not proved in StaticallyInParallel");
  auto p4 = status("(4) numVar <= 2^depth");
  o.require(p4.status == Status::Proved, "(4) " + p4.detail);
  if (o.pass) o.detail = "(1) UNKNOWN x7 and oracle REFUTED, (2) " + p2.detail + ", (3) split, (4) " + p4.detail;
  return o;
}

Outcome height_and_var() {
  using namespace circuit;
  Outcome o;
  Embedder e(kVars);
  std::mt19937_64 rng(3);
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    auto t = random_reified_term(e, rng, 8);
    if (app_num_var(t) > (std::uint64_t{1} << app_depth(t))) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " random violations");
  // The census is checked against listing every circuit up to height 2 in
  // the unit tests; here it covers all circuits up to height 4.
  std::uint64_t total = 0, bad = 0;
  for (const auto& [k, count] : profile_census(4, 3)) {
    total += count;
    if (k.second > (std::uint64_t{1} << k.first)) bad += count;
  }
  for (const auto& c : enumerate_circuits(2, kVars)) {
    auto t = e.embed_reified(c);
    if (app_num_var(t) > (std::uint64_t{1} << app_depth(t))) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " exhaustive violations");
  if (o.pass) o.detail = "10000 random terms and " + std::to_string(total) + " circuits of height <= 4, 0 violations";
  return o;
}

Outcome soundness() {
  using theory::TheoryId;
  Outcome o;
  std::size_t accepted = 0;
  for (auto id : {TheoryId::Statically, TheoryId::StaticallyInParallel, TheoryId::Dynamically,
                  TheoryId::Nondeterministically, TheoryId::Repeatedly, TheoryId::Streamingly,
                  TheoryId::Conditionally}) {
    auto t = testing::run_soundness(id, 1000, 31 + static_cast<unsigned>(id));
    accepted += t.accepted;
    auto name = std::string(to_string(id));
    o.require(t.accepted >= 1000, name + ": only " + std::to_string(t.accepted) + " accepted");
    o.require(t.unsound == 0, name + ": " + t.first_unsound);
  }
  if (o.pass) o.detail = std::to_string(accepted) + " accepted derivations over 7 theories, 0 unsound";
  return o;
}

Outcome powerset() {
  Outcome o;
  for (const auto& [law, t] : testing::powerset_laws(500, 5)) {
    o.require(t.instances >= 500, law + ": too few instances");
    o.require(t.failures == 0, law + ": " + t.first_failure);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto cex = testing::associativity_counterexample();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(cex.has_value(), "no associativity counterexample");
  o.require(s < 10, "associativity search took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "4 laws x 500 instances hold; associativity fails on " + to_sexpr(cex->first);
  return o;
}

Outcome haxl_costs() {
  using namespace haxl;
  Outcome o;
  auto a = Analyzer::standard(data_effect(kVars, nat_type(3)));
  Db db{{"x", Value::nat(3)}, {"y", Value::nat(1)}, {"z", Value::nat(2)}};
  std::string rounds;
  auto fs = fixtures(a.builder());
  const std::uint64_t want[] = {2, 1, 0};
  o.require(fs.size() == 3, "expected three fixtures");
  for (std::size_t i = 0; i < fs.size() && i < 3; ++i) {
    auto r = a.analyze(fs[i].program, db);
    o.require(r.rounds == want[i], fs[i].name + " took " + std::to_string(r.rounds) + " rounds");
    rounds += (rounds.empty() ? "" : ", ") + fs[i].name + " " + std::to_string(r.rounds);
  }
  auto log = EffectSig::make("LogEff", {OpSig{"Log", {}, unit_type(), {}}});
  auto ext = a.extend_with_effect(log, constant_cost_effect("LogEff", 0));
  std::size_t diffs = 0;
  for (const auto& f : fs)
    if (!(ext.analyze(f.program, db) == a.analyze(f.program, db))) ++diffs;
  for (const auto& [kind, inst] : a.table())
    if (ext.table().at(kind) != inst) ++diffs;
  o.require(diffs == 0, std::to_string(diffs) + " diffs after adding LogEff");
  if (o.pass) o.detail = "rounds " + rounds + "; LogEff extension, 0 diffs";
  return o;
}

Outcome server_refinement() {
  using namespace net;
  Outcome o;
  auto ls = layers(parse_netimp(slurp("server/impl.netimp")), parse_netspec(slurp("server/spec.netspec")));
  Server s(NetConfig::with_conns(2), {ls.impl, ls.l1, ls.l2, ls.l3, ls.spec});
  auto f = embed_layers(s, ls);
  for (const auto& l : verify_chain(s, f, 2, 4)) {
    o.require(l.status == Status::Proved && l.derivation_ok && l.oracle.holds,
              l.name + " " + std::string(to_string(l.status)) + " (" + l.derivation_note + ")");
  }
  auto rev = check_reverse(s, f, 2, 4);
  o.require(rev.status == Status::Refuted && rev.oracle.witness.has_value(), "Spec ⊑ Impl not refuted");
  if (o.pass) o.detail = "4 links PROVED by derivation and oracle at (2, 4); reverse witness " + rev.oracle.witness->to_string();
  return o;
}

Outcome round_trips() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    auto c = circuit::random_circuit(rng, 6, kVars);
    if (!circuit::circuit_equal(circuit::parse_circuit(circuit::pretty(c)), c)) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " circuits changed");
  auto impl = slurp("server/impl.netimp"), spec = slurp("server/spec.netspec");
  auto pi = net::parse_netimp(impl), ps = net::parse_netspec(spec);
  o.require(net::same_modulo_whitespace(net::pretty(pi), impl), "Impl listing differs");
  o.require(net::same_modulo_whitespace(net::pretty(ps), spec), "Spec listing differs");
  o.require(net::program_equal(net::parse_netimp(net::pretty(pi)), pi), "Impl does not reparse");
  o.require(net::program_equal(net::parse_netspec(net::pretty(ps)), ps), "Spec does not reparse");
  if (o.pass) o.detail = "1000 random circuits and both server listings";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {"circuit properties", circuit_properties, 60},  {"heightAndVar", height_and_var, 60},
      {"soundness harness", soundness, 300},            {"PowerSet laws", powerset, 60},
      {"Haxl costs", haxl_costs, 60},                   {"server refinement", server_refinement, 600},
      {"parser round-trips", round_trips, 60},
  };
  int failed = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    std::printf("[%s] %d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", n, c.name, s, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
