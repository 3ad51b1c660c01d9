#pragma once

#include <stdexcept>

namespace depmod {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define DEPMOD_DEFINE_ERROR(Name) \
  struct Name : Error {           \
    using Error::Error;           \
  };

DEPMOD_DEFINE_ERROR(InvalidParams)
DEPMOD_DEFINE_ERROR(DomainError)
DEPMOD_DEFINE_ERROR(BracketError)
DEPMOD_DEFINE_ERROR(NotPositiveDefinite)
DEPMOD_DEFINE_ERROR(UnsupportedFamily)
DEPMOD_DEFINE_ERROR(SingularLift)
DEPMOD_DEFINE_ERROR(MonotonicityViolation)
DEPMOD_DEFINE_ERROR(QuantileBracketError)
DEPMOD_DEFINE_ERROR(InfiniteVariance)
DEPMOD_DEFINE_ERROR(DegenerateOutput)
DEPMOD_DEFINE_ERROR(MixedMethods)
DEPMOD_DEFINE_ERROR(AcceptanceTooLow)
DEPMOD_DEFINE_ERROR(TooFewSamples)
DEPMOD_DEFINE_ERROR(SpecParseError)
DEPMOD_DEFINE_ERROR(UnsupportedAnalytic)

#undef DEPMOD_DEFINE_ERROR

}  // namespace depmod
