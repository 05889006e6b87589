#pragma once

#include <stdexcept>
#include <string>

namespace srweyl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SRWEYL_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// algebra
SRWEYL_DEFINE_ERROR(DivisionByZeroPoly);
SRWEYL_DEFINE_ERROR(RankDeficient);
SRWEYL_DEFINE_ERROR(NotSkewEven);
SRWEYL_DEFINE_ERROR(VariableMismatch);
SRWEYL_DEFINE_ERROR(ParseError);

// geometry
SRWEYL_DEFINE_ERROR(InvalidStructure);
SRWEYL_DEFINE_ERROR(NonPolynomialStructure);
SRWEYL_DEFINE_ERROR(NotBracketGenerating);
SRWEYL_DEFINE_ERROR(NotPrivileged);

// hamiltonian
SRWEYL_DEFINE_ERROR(IntegrationError);

// fundamental
SRWEYL_DEFINE_ERROR(NeedMoreLayers);
SRWEYL_DEFINE_ERROR(InternalInconsistency);

// abnormal
SRWEYL_DEFINE_ERROR(NoCharacteristic);

#undef SRWEYL_DEFINE_ERROR

}  // namespace srweyl
