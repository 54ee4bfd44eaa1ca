#pragma once

#include <stdexcept>
#include <string>

namespace thompson {

// Malformed input or a violated precondition. The CLI maps this to exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or certificate that could not be completed within the requested
// horizon. Retrying with a larger horizon may succeed. The CLI maps this to
// exit 2.
class HorizonError : public Error {
 public:
  using Error::Error;
};

#define THOMPSON_DEFINE_ERROR(Name, Base)              \
  class Name : public Base {                           \
   public:                                             \
    explicit Name(const std::string& what)             \
        : Base(std::string(#Name ": ") + what) {}      \
  };

THOMPSON_DEFINE_ERROR(ParseError, Error)
THOMPSON_DEFINE_ERROR(NotStandard, Error)
THOMPSON_DEFINE_ERROR(NotStandardPartition, Error)
THOMPSON_DEFINE_ERROR(NotThompson, Error)
THOMPSON_DEFINE_ERROR(OutOfDomain, Error)
THOMPSON_DEFINE_ERROR(IndexOutOfRange, Error)
THOMPSON_DEFINE_ERROR(NotAPartition, Error)
THOMPSON_DEFINE_ERROR(Malformed, Error)
THOMPSON_DEFINE_ERROR(DegenerateParams, Error)
THOMPSON_DEFINE_ERROR(NumericalBreakdown, Error)
THOMPSON_DEFINE_ERROR(NotFoundWithinHorizon, HorizonError)
THOMPSON_DEFINE_ERROR(HorizonTooSmall, HorizonError)

#undef THOMPSON_DEFINE_ERROR

}  // namespace thompson
