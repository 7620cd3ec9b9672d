#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace facefuse {

enum class ErrorCode {
  OutOfRange,
  NonMonotonicTime,
  BadPhase,
  NonPositiveScale,
  UnknownPointer,
  DegenerateGravity,
  DuplicateIdentifier,
  ParseError,
  ValidationError,
  UnknownScenario,
  BadConfig,
  Protocol,
};

std::string_view to_string(ErrorCode code);

// Recoverable library failures; switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse and validation failures inside a text stream carry the 1-based line.
class LineError : public Error {
 public:
  LineError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace facefuse
