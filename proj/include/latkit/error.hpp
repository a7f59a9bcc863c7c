#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latkit {

enum class ErrorCode {
  kSingular,
  kNotIntegral,
  kNotPositiveDefinite,
  kNotSymmetric,
  kInvalidArgument,
  kCapExceeded,
  kNotContained,
  kNotIsometry,
  kOrderNotPrime,
  kNotElementary,
  kNotIsotropic,
  kPrecondition,
  kUndecidable,
  kParse,
  kBudgetExceeded,
  kDivisionByZero,
};

std::string_view to_string(ErrorCode code);

// All domain failures raised by the library. The code is stable and is what
// the CLI and the tests dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latkit
