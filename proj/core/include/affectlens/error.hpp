#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affectlens {

// Error categories. The CLI maps these onto exit codes and the HTTP service
// onto status codes plus a machine-readable "code" string.
enum class ErrorCode {
  kUsage = 2,             // caller broke a precondition
  kParse = 3,             // malformed input line or file
  kIo = 4,                // unreadable / unwritable path
  kEncoding = 5,          // input is not valid UTF-8
  kUndefined = 6,         // quantity undefined (empty document, zero variance, ...)
  kNotFound = 7,          // unknown document, collection or entity
  kFingerprintMismatch = 8,
  kConflict = 9,          // e.g. port already bound
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by line-oriented loaders; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace affectlens
