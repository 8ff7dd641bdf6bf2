#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexistat {

enum class ErrorKind {
  Parse,
  Validation,
  Encoding,
  EmptyForm,
  NoOverlap,
  Saturation,
  DegenerateTree,
  Io,
  ContractViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Encoding: return "encoding error";
    case ErrorKind::EmptyForm: return "empty-form error";
    case ErrorKind::NoOverlap: return "no-overlap error";
    case ErrorKind::Saturation: return "saturation error";
    case ErrorKind::DegenerateTree: return "degenerate-tree error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::ContractViolation: return "contract violation";
  }
  return "error";
}

/// Single exception type for the library. `line()` is non-zero for errors
/// tied to a position in a text input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(kind, message, line)), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message, std::size_t line) {
    std::string out = to_string(kind);
    if (line != 0) out += " at line " + std::to_string(line);
    out += ": ";
    out += message;
    return out;
  }

  ErrorKind kind_;
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, std::size_t line = 0) {
  throw Error(kind, message, line);
}

}  // namespace lexistat
