#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace drinlev {

enum class Errc {
  InvalidInput,
  NotMonic,
  NotIrreducible,
  NonUnitInverse,
  ZeroElement,
  ConstantDivisor,
  PrimeNotInSupport,
  NotInvertible,
  CapacityExceeded,
  BoundViolation,
  NotClosedUnderProduct,
  ShapeMismatch,
  BadPartition,
  NotStandardShape,
  ZeroLeadingCoefficient,
  GenericCharacteristic,
  NonIntegralDegree,
  SearchExhausted,
  NotLinear,
  TruncationTooCoarse,
  PrecisionExceeded,
  HypothesisViolated,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Default ceiling for brute-force enumerations.
inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 20;

}  // namespace drinlev
