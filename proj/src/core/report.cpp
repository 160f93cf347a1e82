#include "adverbs/report.hpp"

namespace adverbs {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Proved: return "PROVED";
    case Status::Refuted: return "REFUTED";
    case Status::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<Status> status_from_string(std::string_view s) {
  for (auto st : {Status::Proved, Status::Refuted, Status::Unknown})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

}  // namespace adverbs
