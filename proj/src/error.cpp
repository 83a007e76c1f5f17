#include "duopoly/error.hpp"

namespace duopoly {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInfeasibleDomain: return "InfeasibleDomain";
    case ErrorCode::kInitOutsideDomain: return "InitOutsideDomain";
    case ErrorCode::kOutsideDomain: return "OutsideDomain";
    case ErrorCode::kWrongModelKind: return "WrongModelKind";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kUnknownModel: return "UnknownModel";
    case ErrorCode::kConfigParse: return "ConfigParse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace duopoly
