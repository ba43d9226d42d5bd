#pragma once

#include <stdexcept>
#include <string>

namespace gabor {

enum class Errc {
  DuplicatePole,
  ImaginaryPoleParameter,
  ZeroAmplitude,
  NonpositiveMultiplicity,
  OverflowRisk,
  UnsupportedWindow,
  InvalidOverride,
  NoncancellingDenominator,
  PoleHit,
  DegenerateXi,
  StructureViolation,
  ConfigError,
  InvalidBlock,
  NearDegenerate,
  CoalescedPoles,
  NoConvergence,
  ToleranceNotMet,
  InvalidArgument,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (the CLI in particular) can map them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gabor
