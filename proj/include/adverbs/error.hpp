#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adverbs {

enum class ErrorCode {
  DuplicateEffectName,
  KindNotInVocabulary,
  TypeMismatch,
  MissingAlgebraCase,
  OpaqueFunctionInSideCondition,
  RuleNotInTheory,
  SideConditionFails,
  UnboundVar,
  SyntaxError,
  ScopeError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, "at " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace adverbs
