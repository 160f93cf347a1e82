#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adverbs {

enum class Status { Proved, Refuted, Unknown };

std::string_view to_string(Status s);
/// Inverse of to_string; nullopt for anything else.
std::optional<Status> status_from_string(std::string_view s);

/// One line of a checker report. REFUTED verdicts always carry a witness.
struct ReportLine {
  std::string name;
  Status status = Status::Unknown;
  std::string witness;
  std::string detail;

  friend bool operator==(const ReportLine&, const ReportLine&) = default;
};

}  // namespace adverbs
