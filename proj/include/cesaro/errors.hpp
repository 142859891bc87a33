#ifndef CESARO_ERRORS_HPP
#define CESARO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cesaro {

enum class ErrorKind {
  InvalidInput,
  InvalidExponent,
  InvalidTolerance,
  UnsupportedSpace,
  SpaceMismatch,
  DomainError,
  EmptyWitnessSet,
  DegenerateInput,
  TauOutOfRange,
  TauTooLarge,
  ExponentOrder,
  HypothesisViolation,
  ZeroMeasureA,
  SchemaViolation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the theorem checks when a hypothesis fails; `hypothesis()` names
// it ("R", "M", "K", "eps", "tau", "f").
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string hypothesis, const std::string& detail)
      : Error(ErrorKind::HypothesisViolation, hypothesis + ": " + detail),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

}  // namespace cesaro

#endif  // CESARO_ERRORS_HPP
