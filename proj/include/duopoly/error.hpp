#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace duopoly {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kInvalidParams,
  kInfeasibleDomain,
  kInitOutsideDomain,
  kOutsideDomain,
  kWrongModelKind,
  kSingularSystem,
  kGridTooLarge,
  kUnknownModel,
  kConfigParse,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Structured error carried by every failing operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace duopoly
