#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace preftest {

enum class Errc {
  DuplicateAlternative,
  UnknownAlternative,
  WrongLength,
  EmptySubset,
  EmptyProfile,
  InvalidParameter,
  DivisibilityError,
  InstanceTooLarge,
  NotFoundWithinCap,
  SameAlternative,
  ForeignHandle,
  TooFewAlternatives,
  EpsilonOutOfRange,
  CapExceeded,
  DegenerateSample,
  UnsupportedDomain,
  ParseError,
  IoError,
};

std::string_view to_string(Errc code);

// Configuration errors are the ones a caller can fix by changing inputs; the
// CLI maps them to exit status 2.
bool is_configuration_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace preftest
