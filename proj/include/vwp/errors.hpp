#pragma once

#include <stdexcept>
#include <string>

namespace vwp {

// Base of every library error.  `code()` is a stable machine-readable tag
// used by the CLI when serializing failures.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct NonPositiveArgument : Error {
  explicit NonPositiveArgument(const std::string& w) : Error("NonPositiveArgument", w) {}
};
struct InvalidOrder : Error {
  explicit InvalidOrder(const std::string& w) : Error("InvalidOrder", w) {}
};
struct NotConvergent : Error {
  explicit NotConvergent(const std::string& w) : Error("NotConvergent", w) {}
};
struct MaxTermsExceeded : Error {
  explicit MaxTermsExceeded(const std::string& w) : Error("MaxTermsExceeded", w) {}
};
struct ZeroDenominator : Error {
  explicit ZeroDenominator(const std::string& w) : Error("ZeroDenominator", w) {}
};
struct ConditionViolated : Error {
  explicit ConditionViolated(const std::string& w) : Error("ConditionViolated", w) {}
};
struct DimensionTooLarge : Error {
  explicit DimensionTooLarge(const std::string& w) : Error("DimensionTooLarge", w) {}
};
struct InvalidParameters : Error {
  explicit InvalidParameters(const std::string& w) : Error("InvalidParameters", w) {}
};
struct ReconstructionMismatch : Error {
  explicit ReconstructionMismatch(const std::string& w) : Error("ReconstructionMismatch", w) {}
};
struct ParityViolation : Error {
  explicit ParityViolation(const std::string& w) : Error("ParityViolation", w) {}
};
struct LogTermSurvives : Error {
  explicit LogTermSurvives(const std::string& w) : Error("LogTermSurvives", w) {}
};

}  // namespace vwp
