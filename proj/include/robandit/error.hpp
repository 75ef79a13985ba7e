#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robandit {

enum class ErrorCode {
  InsufficientSamplesForQuantiles,
  NonFiniteInput,
  AllSamplesCapped,
  ShapeMismatch,
  NonFiniteObjective,
  InsufficientUsers,
  ConfigParse,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace robandit
