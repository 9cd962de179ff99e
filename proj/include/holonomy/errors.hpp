#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomy {

enum class Errc {
  InvariantViolation,
  IdentityInput,
  NotMonic,
  TraceOutOfRange,
  TraceNotRepresentable,
  LogBranchFailure,
  DimensionMismatch,
  WrongFiber,
  BadCaseParams,
  ParseError,
};

std::string_view to_string(Errc code);

/// Library-wide exception carrying a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::IdentityInput: return "IdentityInput";
    case Errc::NotMonic: return "NotMonic";
    case Errc::TraceOutOfRange: return "TraceOutOfRange";
    case Errc::TraceNotRepresentable: return "TraceNotRepresentable";
    case Errc::LogBranchFailure: return "LogBranchFailure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongFiber: return "WrongFiber";
    case Errc::BadCaseParams: return "BadCaseParams";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace holonomy
