#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prefdist {

enum class ErrorKind {
  NegativeProbability,
  SumNotOne,
  LengthMismatch,
  DimensionMismatch,
  InvalidArgument,
  InvalidDimension,
  EmptyAlternatives,
  InconsistentEqualities,
  EmptyPolytope,
  InfeasibleStart,
  InfeasibleBase,
  OffGrid,
  OutOfRange,
  ShapeMismatch,
  SpaceMismatch,
  TooFewSubjects,
  InvalidFamilyParameter,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries a kind so callers (the CLI in particular) can
// map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prefdist
