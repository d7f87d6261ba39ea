#ifndef COVERTBC_ERRORS_HPP
#define COVERTBC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace covertbc {

// Buckets map to CLI exit codes: Parse -> 2, Precondition -> 3, Numeric -> 4.
enum class ErrorKind { Parse, Precondition, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string name, std::string module, std::string op,
        const std::string& what)
      : std::runtime_error(what),
        kind_(kind),
        name_(std::move(name)),
        module_(std::move(module)),
        op_(std::move(op)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::string& module_name() const noexcept { return module_; }
  const std::string& operation() const noexcept { return op_; }

private:
  ErrorKind kind_;
  std::string name_;
  std::string module_;
  std::string op_;
};

struct ParseError : Error {
  ParseError(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Parse, "ParseError", std::move(module), std::move(op), what) {}
};

struct NonStochasticRow : Error {
  NonStochasticRow(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "NonStochasticRow", "channel-core", std::move(op), what) {}
};

struct DimensionMismatch : Error {
  DimensionMismatch(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "DimensionMismatch", std::move(module), std::move(op), what) {}
};

struct SupportViolation : Error {
  SupportViolation(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "SupportViolation", std::move(module), std::move(op), what) {}
};

struct OutOfRange : Error {
  OutOfRange(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "OutOfRange", std::move(module), std::move(op), what) {}
};

struct RedundantNoInput : Error {
  RedundantNoInput(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "RedundantNoInput", std::move(module), std::move(op), what) {}
};

struct AbsoluteContinuityViolation : Error {
  AbsoluteContinuityViolation(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "AbsoluteContinuityViolation", std::move(module),
              std::move(op), what) {}
};

struct DegenerateDenominator : Error {
  DegenerateDenominator(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "DegenerateDenominator", "condition-region", std::move(op),
              what) {}
};

struct TooFewSamples : Error {
  TooFewSamples(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "TooFewSamples", "converse-engine", std::move(op), what) {}
};

struct ConditionViolated : Error {
  ConditionViolated(std::string op, const std::string& what)
      : Error(ErrorKind::Numeric, "ConditionViolated", "converse-engine", std::move(op), what) {}
};

struct OutsideRegion : Error {
  OutsideRegion(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "OutsideRegion", "region-and-keys", std::move(op), what) {}
};

struct UnsupportedRate : Error {
  UnsupportedRate(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "UnsupportedRate", "region-and-keys", std::move(op), what) {}
};

struct EmptyCodebook : Error {
  EmptyCodebook(std::string op, const std::string& what)
      : Error(ErrorKind::Precondition, "EmptyCodebook", "simulator", std::move(op), what) {}
};

// Raised when a requested codebook cannot be materialized for exact ML
// decoding at desk scale; carries the offending target size in the message.
struct CodebookTooLarge : Error {
  CodebookTooLarge(std::string op, const std::string& what)
      : Error(ErrorKind::Numeric, "CodebookTooLarge", "simulator", std::move(op), what) {}
};

struct NumericFailure : Error {
  NumericFailure(std::string module, std::string op, const std::string& what)
      : Error(ErrorKind::Numeric, "NumericFailure", std::move(module), std::move(op), what) {}
};

}  // namespace covertbc

#endif
