#include "gabor/error.hpp"

namespace gabor {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicatePole: return "DuplicatePole";
    case Errc::ImaginaryPoleParameter: return "ImaginaryPoleParameter";
    case Errc::ZeroAmplitude: return "ZeroAmplitude";
    case Errc::NonpositiveMultiplicity: return "NonpositiveMultiplicity";
    case Errc::OverflowRisk: return "OverflowRisk";
    case Errc::UnsupportedWindow: return "UnsupportedWindow";
    case Errc::InvalidOverride: return "InvalidOverride";
    case Errc::NoncancellingDenominator: return "NoncancellingDenominator";
    case Errc::PoleHit: return "PoleHit";
    case Errc::DegenerateXi: return "DegenerateXi";
    case Errc::StructureViolation: return "StructureViolation";
    case Errc::ConfigError: return "ConfigError";
    case Errc::InvalidBlock: return "InvalidBlock";
    case Errc::NearDegenerate: return "NearDegenerate";
    case Errc::CoalescedPoles: return "CoalescedPoles";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace gabor
