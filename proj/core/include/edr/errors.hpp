#pragma once

#include <stdexcept>
#include <string>

namespace edr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EDR_DECLARE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

EDR_DECLARE_ERROR(MixedRings);
EDR_DECLARE_ERROR(ParseError);
EDR_DECLARE_ERROR(AxiomViolation);
EDR_DECLARE_ERROR(UnsupportedSpec);
EDR_DECLARE_ERROR(NotBezout);
EDR_DECLARE_ERROR(TooLarge);
EDR_DECLARE_ERROR(NotComaximal);
EDR_DECLARE_ERROR(NoResidue);
EDR_DECLARE_ERROR(NoDecomposition);
EDR_DECLARE_ERROR(NotFZA);
EDR_DECLARE_ERROR(ZeroInput);
EDR_DECLARE_ERROR(ZeroIntegerPart);
EDR_DECLARE_ERROR(Unsupported);

#undef EDR_DECLARE_ERROR

}  // namespace edr
