#pragma once

#include <stdexcept>
#include <string>

namespace pelks {

// Base of every domain error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct InvalidField : Error { using Error::Error; };

// Result would depend on digits beyond the tracked precision.
struct InsufficientPrecision : Error { using Error::Error; };

struct InvalidInvariant : Error { using Error::Error; };
struct NotInImage : Error { using Error::Error; };

struct DegenerateTestElement : Error { using Error::Error; };
struct SignatureMismatch : Error { using Error::Error; };

struct NotInDomain : Error { using Error::Error; };
struct NotInGroup : Error { using Error::Error; };
struct NearSingularDenominator : Error { using Error::Error; };

struct InvalidEmbedding : Error { using Error::Error; };
struct NoSelfDualForm : Error { using Error::Error; };
struct NonIntegralForm : Error { using Error::Error; };
struct SingularPairing : Error { using Error::Error; };

struct ConfigInvalid : Error { using Error::Error; };

}  // namespace pelks
