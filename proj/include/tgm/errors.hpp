#pragma once

#include <stdexcept>
#include <string>

namespace tgm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TGM_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

TGM_DEFINE_ERROR(InvalidArgument);
TGM_DEFINE_ERROR(InvalidOperator);
TGM_DEFINE_ERROR(NonRealFieldError);
TGM_DEFINE_ERROR(NumericalInputError);
TGM_DEFINE_ERROR(OutOfWindowError);
TGM_DEFINE_ERROR(DegenerateModeError);
TGM_DEFINE_ERROR(UnsupportedDegeneracy);
TGM_DEFINE_ERROR(NearResonanceError);
TGM_DEFINE_ERROR(ConfigError);
TGM_DEFINE_ERROR(IoError);
TGM_DEFINE_ERROR(InsufficientData);
TGM_DEFINE_ERROR(InternalError);

#undef TGM_DEFINE_ERROR

}  // namespace tgm
