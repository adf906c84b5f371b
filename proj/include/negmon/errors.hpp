#pragma once

#include <stdexcept>

namespace negmon {

// Base class for all negmon errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimMismatchError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct NotNormalizedError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct EmptyEnsembleError : Error { using Error::Error; };
struct InvalidStateError : Error { using Error::Error; };
struct NotPPTInstrumentError : Error { using Error::Error; };

}  // namespace negmon
