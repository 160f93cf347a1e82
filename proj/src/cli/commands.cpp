#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "adverbs/circuit/circuit.hpp"
#include "adverbs/cli/cli.hpp"
#include "adverbs/error.hpp"
#include "adverbs/haxl/haxl.hpp"
#include "adverbs/netsim/server.hpp"
#include "adverbs/semantics/traces.hpp"
#include "adverbs/term_io.hpp"
#include "adverbs/theory/derivation_io.hpp"

namespace adverbs::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A file name, or the text itself when it starts with a parenthesis.
std::string file_or_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '(' && !std::filesystem::exists(arg)) return arg;
  return read_file(arg);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Comma-separated theory names, matched ignoring case, '-' and '_'.
theory::Theory parse_theory(const std::string& spec) {
  using theory::TheoryId;
  std::set<TheoryId> ids;
  std::stringstream ss(spec);
  for (std::string name; std::getline(ss, name, ',');) {
    bool found = false;
    for (auto id : {TheoryId::Streamingly, TheoryId::Statically, TheoryId::StaticallyInParallel,
                    TheoryId::Conditionally, TheoryId::Dynamically, TheoryId::Repeatedly,
                    TheoryId::Nondeterministically})
      if (squash(to_string(id)) == squash(name)) {
        ids.insert(id);
        found = true;
      }
    if (!found) throw UsageError("unknown theory " + name);
  }
  if (ids.empty()) throw UsageError("--theory needs at least one name");
  return theory::theory_of(ids);
}

void collect_keys(const SExpr& e, std::set<std::string>& keys) {
  if (!e.is_list()) return;
  if (e.head_is("effect") && e.items.size() >= 4 && e.items[1].is_atom && e.items[1].atom == "DataEff" &&
      e.items[3].is_atom)
    keys.insert(e.items[3].atom);
  for (const auto& i : e.items) collect_keys(i, keys);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---- circuit -------------------------------------------------------------

std::vector<circuit::CircuitRef> read_circuits(const std::string& file) {
  std::vector<circuit::CircuitRef> out;
  for (const auto& l : lines_of(read_file(file))) out.push_back(circuit::parse_circuit(l));
  if (out.empty()) throw UsageError(file + " has no circuit");
  return out;
}

Report circuit_stats(const std::string& file) {
  Report r;
  auto cs = read_circuits(file);
  std::set<std::string> vars;
  for (const auto& c : cs)
    for (const auto& v : circuit::variables_of(c)) vars.insert(v);
  circuit::Embedder e({vars.begin(), vars.end()});
  r.data["circuits"] = json::array();
  for (const auto& c : cs) {
    auto t = e.embed_reified(c);
    r.data["circuits"].push_back({{"circuit", circuit::pretty(c)},
                                  {"deep", {{"depth", circuit::deep_depth(c)}, {"numVar", circuit::deep_num_var(c)}}},
                                  {"reified", {{"depth", circuit::app_depth(t)}, {"numVar", circuit::app_num_var(t)}}}});
  }
  return r;
}

/// The lines whose outcome is determined: (2), (3) in parallel and (4)
/// must be PROVED, and no theory may prove (1) when the oracle refutes it.
bool circuit_report_as_expected(const std::vector<ReportLine>& lines) {
  bool idempotent_refuted = false;
  for (const auto& l : lines)
    if (l.name.starts_with("(1)") && l.name.ends_with("[oracle]")) idempotent_refuted = l.status == Status::Refuted;
  for (const auto& l : lines) {
    bool must_prove = l.name.starts_with("(2)") || l.name.starts_with("(4)") ||
                      (l.name.starts_with("(3)") && l.name.ends_with("[StaticallyInParallel]"));
    if (must_prove && l.status != Status::Proved) return false;
    if (l.name.starts_with("(1)") && !l.name.ends_with("[oracle]") && idempotent_refuted && l.status == Status::Proved)
      return false;
  }
  return true;
}

// ---- equiv / refine --------------------------------------------------------

struct JudgmentArgs {
  std::string lhs, rhs, theory = "statically", derivation;
  unsigned depth = 3, bound_l = 1, bound_r = 4;
};

enum class OracleModel { Sequential, BothOrders, None };

// The interpretation the theory is sound for: commutativity needs both
// orders, associativity needs a fixed one, and with both there is none.
OracleModel model_for(const theory::Theory& th) {
  using theory::RuleId;
  if (!th.has(RuleId::AppComm)) return OracleModel::Sequential;
  if (th.has(RuleId::AppAssoc) || th.has(RuleId::AppNaturality)) return OracleModel::None;
  return OracleModel::BothOrders;
}

sem::TraceSet behaviors(const TermRef& t, OracleModel m, unsigned bound) {
  sem::OutcomeModel model;
  return m == OracleModel::BothOrders ? sem::powerset_interpret(t, model, bound) : sem::trace_sem(t, model, bound);
}

Report judgment_check(theory::Relation rel, const JudgmentArgs& a) {
  using theory::Relation;
  auto lt = parse_sexpr(file_or_text(a.lhs));
  auto rt = parse_sexpr(file_or_text(a.rhs));
  std::set<std::string> keys;
  collect_keys(lt, keys);
  collect_keys(rt, keys);
  if (keys.empty()) keys.insert("x");
  auto data = EffectSig::make(
      "DataEff", {OpSig{"GetData", {enum_type("var", {keys.begin(), keys.end()})}, bool_type(), {}}});
  ReadContext ctx{TermBuilder(Vocabulary({KindTag::Pure, KindTag::FMap, KindTag::LiftA2, KindTag::SelectBy,
                                          KindTag::Bind, KindTag::KPlus, KindTag::Plus},
                                         {data}))};
  auto l = read_term(lt, ctx);
  auto r = read_term(rt, ctx);
  auto th = parse_theory(a.theory);
  theory::Judgment j{rel, l, r};

  Report rep;
  ReportLine line;
  line.name = to_sexpr(l) + (rel == Relation::Equiv ? " ≅ " : " ⊑ ") + to_sexpr(r) + " [" + th.name() + "]";
  auto accept = [&](const theory::DerivationRef& d, const std::string& how) {
    line.status = Status::Proved;
    line.detail = how + ", " + std::to_string(theory::derivation_size(d)) + " steps";
    rep.data["derivation"] = theory::to_sexpr(d);
  };
  if (!a.derivation.empty()) {
    auto d = theory::read_derivation(read_file(a.derivation), ctx);
    auto v = theory::check_derivation(th, d);
    bool matches = d->conclusion.rel == rel && term_equal(d->conclusion.lhs, l) && term_equal(d->conclusion.rhs, r);
    if (v.accepted && matches)
      accept(d, "given derivation accepted");
    else
      line.detail = "given derivation rejected: " + (v.accepted ? std::string("conclusion differs") : v.reason);
  }
  if (line.status != Status::Proved) {
    if (auto d = theory::prove_bounded(th, ctx.builder, j, a.depth)) accept(*d, "found at depth " + std::to_string(a.depth));
  }
  if (line.status != Status::Proved) {
    auto m = model_for(th);
    std::string note = line.detail.empty() ? "" : line.detail + "; ";
    note += "no derivation within depth " + std::to_string(a.depth);
    if (m == OracleModel::None) {
      line.detail = note + "; no interpretation is sound for this theory";
    } else if (rel == Relation::Equiv) {
      auto sl = behaviors(l, m, a.bound_l), sr = behaviors(r, m, a.bound_l);
      for (const auto& b : sl.behaviors)
        if (!sr.contains(b) && line.witness.empty()) line.witness = "left only: " + b.to_string();
      for (const auto& b : sr.behaviors)
        if (!sl.contains(b) && line.witness.empty()) line.witness = "right only: " + b.to_string();
      line.detail = note + "; oracle compared " + std::to_string(sl.size() + sr.size()) + " behaviors";
    } else if (m == OracleModel::Sequential) {
      auto check = sem::oracle_refines(l, r, sem::OutcomeModel{}, a.bound_l, a.bound_r);
      if (check.witness) line.witness = check.witness->to_string();
      line.detail = note + "; oracle checked " + std::to_string(check.behaviors_checked) + " behaviors";
    } else {
      auto sl = behaviors(l, m, a.bound_l), sr = behaviors(r, m, a.bound_r);
      for (const auto& b : sl.behaviors)
        if (!sr.contains(b) && line.witness.empty()) line.witness = b.to_string();
      line.detail = note + "; oracle checked " + std::to_string(sl.size()) + " behaviors";
    }
    line.status = line.witness.empty() ? Status::Unknown : Status::Refuted;
  }
  rep.verdicts.push_back(std::move(line));
  rep.data["bounds"] = {{"left", a.bound_l}, {"right", a.bound_r}};
  return rep;
}

// ---- haxl ------------------------------------------------------------------

Report haxl_analyze(const std::string& program, const std::string& db_arg, bool sequential) {
  json db_json;
  try {
    db_json = json::parse(std::filesystem::exists(db_arg) ? read_file(db_arg) : db_arg);
  } catch (const json::exception& e) {
    throw UsageError(std::string("--db: ") + e.what());
  }
  if (!db_json.is_object()) throw UsageError("--db must be a JSON object");
  bool all_bool = true;
  std::uint64_t max_nat = 1;
  for (const auto& [k, v] : db_json.items()) {
    if (v.is_boolean()) continue;
    all_bool = false;
    if (!v.is_number_unsigned()) throw UsageError("--db values must be booleans or naturals");
    max_nat = std::max(max_nat, v.get<std::uint64_t>());
  }
  haxl::Db db;
  for (const auto& [k, v] : db_json.items())
    db[k] = all_bool ? Value::boolean(v.get<bool>()) : Value::nat(v.is_boolean() ? v.get<bool>() : v.get<std::uint64_t>());
  if (!all_bool)
    for (const auto& [k, v] : db_json.items())
      if (v.is_boolean()) throw UsageError("--db mixes booleans and naturals");

  auto text = parse_sexpr(file_or_text(program));
  std::set<std::string> keys;
  for (const auto& [k, v] : db) keys.insert(k);
  collect_keys(text, keys);
  auto values = all_bool ? bool_type() : nat_type(max_nat);
  auto a = haxl::Analyzer::standard(haxl::data_effect({keys.begin(), keys.end()}, values));
  if (sequential) a = a.sequentialized();
  ReadContext ctx{a.builder()};
  ctx.types["value"] = values;
  auto cost = a.analyze(read_term(text, ctx), db);
  Report r;
  r.data = {{"result", cost.result.to_string()}, {"rounds", cost.rounds}, {"requests", cost.requests}};
  return r;
}

// ---- server ----------------------------------------------------------------

struct ServerArgs {
  std::string impl = std::string(ADVERBS_DATA_DIR) + "/server/impl.netimp";
  std::string spec = std::string(ADVERBS_DATA_DIR) + "/server/spec.netspec";
  std::size_t conns = 2;
  unsigned bound_l = 2, bound_r = 4;
  bool reverse = false;
};

json link_json(const net::LinkReport& l) {
  json j{{"name", l.name},
         {"verdict", std::string(to_string(l.status))},
         {"boundUsed", {{"left", l.bound_l}, {"right", l.bound_r}}},
         {"derivation", l.derivation_note},
         {"behaviorsChecked", l.oracle.behaviors_checked}};
  if (l.oracle.witness) j["witness"] = l.oracle.witness->to_string();
  return j;
}

Report server_verify(const ServerArgs& a) {
  auto ls = net::layers(net::parse_netimp(read_file(a.impl)), net::parse_netspec(read_file(a.spec)));
  net::Server s(net::NetConfig::with_conns(a.conns), {ls.impl, ls.l1, ls.l2, ls.l3, ls.spec});
  auto f = net::embed_layers(s, ls);
  auto links = net::verify_chain(s, f, a.bound_l, a.bound_r);
  if (a.reverse) links.push_back(net::check_reverse(s, f, a.bound_l, a.bound_r));
  Report r;
  r.data["links"] = json::array();
  for (const auto& l : links) {
    r.verdicts.push_back({l.name, l.status, l.oracle.witness ? l.oracle.witness->to_string() : "",
                          l.derivation_note + "; " + std::to_string(l.oracle.behaviors_checked) +
                              " behaviors at bounds (" + std::to_string(l.bound_l) + ", " +
                              std::to_string(l.bound_r) + ")"});
    r.data["links"].push_back(link_json(l));
  }
  return r;
}

Report server_trace(const std::string& file, std::size_t conns, unsigned bound) {
  auto p = net::parse_netspec(read_file(file));
  net::Server s(net::NetConfig::with_conns(conns), {p});
  auto ts = sem::trace_sem(s.embed(p), s.outcome_model(), bound);
  Report r;
  r.data["behaviors"] = json::array();
  for (const auto& b : ts.behaviors) r.data["behaviors"].push_back(b.to_string());
  return r;
}

void print_human(const Report& r, std::ostream& out) {
  for (const auto& v : r.verdicts) {
    out << v.name << ": " << to_string(v.status) << "\n";
    if (!v.witness.empty()) out << "  witness: " << v.witness << "\n";
    if (!v.detail.empty()) out << "  " << v.detail << "\n";
  }
  if (r.data.contains("circuits"))
    for (const auto& c : r.data["circuits"])
      out << c["circuit"].get<std::string>() << ": deep depth " << c["deep"]["depth"] << " numVar "
          << c["deep"]["numVar"] << ", reified depth " << c["reified"]["depth"] << " numVar "
          << c["reified"]["numVar"] << "\n";
  if (r.data.contains("behaviors"))
    for (const auto& b : r.data["behaviors"]) out << b.get<std::string>() << "\n";
  if (r.data.contains("rounds")) out << r.data.dump() << "\n";
  if (r.data.contains("derivation")) out << "derivation: " << r.data["derivation"].get<std::string>() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adverb theories: proof checking, trace oracles and case studies"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::uint64_t seed = 1;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--seed", seed, "Seed for random property runs");

  auto* circuit = app.add_subcommand("circuit", "Boolean circuits")->require_subcommand(1);
  std::string circuit_file;
  auto* cstats = circuit->add_subcommand("stats", "Depth and numVar of each circuit in a file");
  cstats->add_option("file", circuit_file)->required();
  auto* ccheck = circuit->add_subcommand("check", "Property report for the circuit in a file");
  ccheck->add_option("file", circuit_file)->required();
  circuit::CheckOptions copt;
  ccheck->add_option("--depth", copt.depth, "Proof search depth");
  ccheck->add_option("--samples", copt.samples, "Random terms for the numVar bound");

  JudgmentArgs ja;
  auto add_judgment = [&](CLI::App* parent, const char* what) {
    auto* c = parent->add_subcommand("check", what);
    c->add_option("lhs", ja.lhs, "Term file or term text")->required();
    c->add_option("rhs", ja.rhs, "Term file or term text")->required();
    c->add_option("--theory", ja.theory, "Comma-separated theories");
    c->add_option("--depth", ja.depth, "Proof search depth");
    c->add_option("--derivation", ja.derivation, "Derivation file to check instead of searching first");
    c->add_option("--bound-l", ja.bound_l, "KPlus bound on the left");
    c->add_option("--bound-r", ja.bound_r, "KPlus bound on the right");
    return c;
  };
  auto* equiv = app.add_subcommand("equiv", "Equivalence of two terms")->require_subcommand(1);
  auto* echeck = add_judgment(equiv, "lhs ≅ rhs");
  auto* refine = app.add_subcommand("refine", "Refinement between two terms")->require_subcommand(1);
  auto* rcheck = add_judgment(refine, "lhs ⊑ rhs");

  auto* haxl = app.add_subcommand("haxl", "Round cost of data-fetching programs")->require_subcommand(1);
  std::string program, db;
  bool sequential = false;
  auto* analyze = haxl->add_subcommand("analyze", "Cost report of a program");
  analyze->add_option("program", program, "Term file or term text")->required();
  analyze->add_option("--db", db, "JSON object of key to value, or a file holding one")->required();
  analyze->add_flag("--sequential", sequential, "Count liftA2 as two rounds in sequence");

  auto* server = app.add_subcommand("server", "Event-loop server refinement")->require_subcommand(1);
  ServerArgs sa;
  auto* verify = server->add_subcommand("verify", "Impl ⊑ L1 ⊑ L2 ⊑ L3 ⊑ Spec");
  verify->add_option("--impl", sa.impl);
  verify->add_option("--spec", sa.spec);
  verify->add_option("--conns", sa.conns, "Initial connections");
  verify->add_option("--bound-l", sa.bound_l);
  verify->add_option("--bound-r", sa.bound_r);
  verify->add_flag("--reverse", sa.reverse, "Also check Spec ⊑ Impl");
  std::string trace_file;
  unsigned trace_bound = 1;
  auto* trace = server->add_subcommand("trace", "Behaviors of a program");
  trace->add_option("file", trace_file)->required();
  trace->add_option("--conns", sa.conns);
  trace->add_option("--bound", trace_bound);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  Report r;
  bool listing = false;
  std::optional<int> code;
  try {
    if (*cstats) {
      r = circuit_stats(circuit_file);
      listing = true;
    } else if (*ccheck) {
      auto cs = read_circuits(circuit_file);
      copt.seed = seed;
      r.verdicts = circuit::check_properties(cs[0], cs.size() > 1 ? cs[1] : circuit::var("u"), copt);
      code = circuit_report_as_expected(r.verdicts) ? 0 : 1;
    } else if (*echeck) {
      r = judgment_check(theory::Relation::Equiv, ja);
    } else if (*rcheck) {
      r = judgment_check(theory::Relation::Refine, ja);
    } else if (*analyze) {
      r = haxl_analyze(program, db, sequential);
      listing = true;
    } else if (*verify) {
      r = server_verify(sa);
      // The reverse direction is expected to fail; only the chain decides.
      code = std::all_of(r.verdicts.begin(), r.verdicts.begin() + 4,
                         [](const auto& v) { return v.status == Status::Proved; })
                 ? 0
                 : 1;
    } else if (*trace) {
      r = server_trace(trace_file, sa.conns, trace_bound);
      listing = true;
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  r.command = args;
  r.timing_ms = ms_since(t0);
  if (as_json)
    out << to_json(r).dump(2) << "\n";
  else
    print_human(r, out);
  if (code) return *code;
  if (listing) return 0;
  bool all = std::all_of(r.verdicts.begin(), r.verdicts.end(), [](const auto& v) { return v.status == Status::Proved; });
  return all && !r.verdicts.empty() ? 0 : 1;
}

}  // namespace adverbs::cli
