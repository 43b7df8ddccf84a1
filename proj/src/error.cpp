#include "sczech/error.hpp"

namespace sczech {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFundamentalDiscriminant: return "NonFundamentalDiscriminant";
    case ErrorKind::PositiveDiscriminant: return "PositiveDiscriminant";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::ZeroModulus: return "ZeroModulus";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::PoleAtLatticePoint: return "PoleAtLatticePoint";
    case ErrorKind::DegenerateField: return "DegenerateField";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NonPositiveModulus: return "NonPositiveModulus";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sczech
