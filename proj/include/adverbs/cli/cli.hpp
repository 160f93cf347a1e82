#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adverbs/report.hpp"
#include "json.hpp"

namespace adverbs::cli {

/// What every command prints: the verdicts, plus command-specific data.
struct Report {
  std::vector<std::string> command;
  std::vector<ReportLine> verdicts;
  double timing_ms = 0;
  nlohmann::json data = nlohmann::json::object();

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& r);
/// Throws InvalidArgument on a document that does not follow the schema.
Report report_from_json(const nlohmann::json& j);

/// Runs one command line (without the program name). Exit codes: 0 when
/// every verdict is PROVED or a listing command succeeded, 1 on REFUTED or
/// UNKNOWN, 2 on a usage or input error. `circuit check` exits 0 when every
/// line has the outcome its theory predicts, and `server verify --reverse`
/// is decided by the four chain links alone.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adverbs::cli
