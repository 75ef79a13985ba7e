#include "robandit/error.hpp"

namespace robandit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientSamplesForQuantiles: return "InsufficientSamplesForQuantiles";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::AllSamplesCapped: return "AllSamplesCapped";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::InsufficientUsers: return "InsufficientUsers";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace robandit
