#include "adverbs/cli/cli.hpp"
#include "adverbs/error.hpp"

namespace adverbs::cli {

using nlohmann::json;

json to_json(const Report& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json line{{"name", v.name}, {"status", std::string(to_string(v.status))}};
    if (!v.witness.empty()) line["witness"] = v.witness;
    if (!v.detail.empty()) line["detail"] = v.detail;
    verdicts.push_back(std::move(line));
  }
  return {{"command", r.command}, {"verdicts", verdicts}, {"timing_ms", r.timing_ms}, {"data", r.data}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.command = j.at("command").get<std::vector<std::string>>();
    for (const auto& v : j.at("verdicts")) {
      ReportLine line;
      line.name = v.at("name").get<std::string>();
      auto st = status_from_string(v.at("status").get<std::string>());
      if (!st) throw Error(ErrorCode::InvalidArgument, "unknown status " + v.at("status").dump());
      line.status = *st;
      line.witness = v.value("witness", "");
      line.detail = v.value("detail", "");
      if (line.status == Status::Refuted && line.witness.empty())
        throw Error(ErrorCode::InvalidArgument, line.name + " is REFUTED without a witness");
      r.verdicts.push_back(std::move(line));
    }
    r.timing_ms = j.at("timing_ms").get<double>();
    r.data = j.value("data", json::object());
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("report: ") + e.what());
  }
}

}  // namespace adverbs::cli
