#pragma once

#include <stdexcept>
#include <string>

namespace sysk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const { return "Error"; }
};

#define SYSK_ERROR(name)                 \
  struct name : Error {                                   \
    using Error::Error;                                   \
    const char* kind() const override { return #name; }   \
  }

SYSK_ERROR(SpecMismatch);
SYSK_ERROR(InvalidElement);
SYSK_ERROR(WindowTooSmall);
SYSK_ERROR(NotStronglySystematic);
SYSK_ERROR(NotIdempotent);
SYSK_ERROR(NotLowerTriangular);
SYSK_ERROR(InvalidMorphism);
SYSK_ERROR(NonAdditiveFunctor);
SYSK_ERROR(SupportViolation);
SYSK_ERROR(OrderNotHInvariant);
SYSK_ERROR(UnclassifiableSlot);
SYSK_ERROR(BudgetExceeded);
SYSK_ERROR(ConfigError);

#undef SYSK_ERROR

}  // namespace sysk
