#include "drinlev/error.hpp"

namespace drinlev {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NotMonic: return "NotMonic";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NonUnitInverse: return "NonUnitInverse";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::ConstantDivisor: return "ConstantDivisor";
    case Errc::PrimeNotInSupport: return "PrimeNotInSupport";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::NotClosedUnderProduct: return "NotClosedUnderProduct";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadPartition: return "BadPartition";
    case Errc::NotStandardShape: return "NotStandardShape";
    case Errc::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case Errc::GenericCharacteristic: return "GenericCharacteristic";
    case Errc::NonIntegralDegree: return "NonIntegralDegree";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::NotLinear: return "NotLinear";
    case Errc::TruncationTooCoarse: return "TruncationTooCoarse";
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::HypothesisViolated: return "HypothesisViolated";
  }
  return "Unknown";
}

}  // namespace drinlev
