#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sczech {

enum class ErrorKind {
  NonFundamentalDiscriminant,
  PositiveDiscriminant,
  BothZero,
  NotUnimodular,
  ZeroModulus,
  PrecisionUnreachable,
  PoleAtLatticePoint,
  DegenerateField,
  NotCoprime,
  NonPositiveModulus,
  EmptySample,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every domain failure in the library surfaces as this exception; callers that
// need to branch on the cause use kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sczech
