#include "preftest/error.hpp"

namespace preftest {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateAlternative: return "DuplicateAlternative";
    case Errc::UnknownAlternative: return "UnknownAlternative";
    case Errc::WrongLength: return "WrongLength";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::EmptyProfile: return "EmptyProfile";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::DivisibilityError: return "DivisibilityError";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::NotFoundWithinCap: return "NotFoundWithinCap";
    case Errc::SameAlternative: return "SameAlternative";
    case Errc::ForeignHandle: return "ForeignHandle";
    case Errc::TooFewAlternatives: return "TooFewAlternatives";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::UnsupportedDomain: return "UnsupportedDomain";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_configuration_error(Errc code) {
  switch (code) {
    case Errc::IoError:
    case Errc::ForeignHandle:
      return false;
    default:
      return true;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace preftest
