#pragma once

#include <stdexcept>
#include <string>

namespace ztower {

// Base class for every error the library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ZTOWER_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what = #Name) : Error(what) {}      \
    }

ZTOWER_DEFINE_ERROR(InversionOfZero);
ZTOWER_DEFINE_ERROR(ZeroInput);
ZTOWER_DEFINE_ERROR(BadModulus);
ZTOWER_DEFINE_ERROR(LengthMismatch);
ZTOWER_DEFINE_ERROR(NotAUnit);
ZTOWER_DEFINE_ERROR(NegativePowerOfNonUnit);
ZTOWER_DEFINE_ERROR(LengthCapExceeded);
ZTOWER_DEFINE_ERROR(InexactDivision);
ZTOWER_DEFINE_ERROR(PrecisionExhausted);
ZTOWER_DEFINE_ERROR(WrongPrime);
ZTOWER_DEFINE_ERROR(BadIndex);
ZTOWER_DEFINE_ERROR(DegenerateInput);
ZTOWER_DEFINE_ERROR(InsufficientData);
ZTOWER_DEFINE_ERROR(UnsupportedPrime);
ZTOWER_DEFINE_ERROR(DepthCapExceeded);
ZTOWER_DEFINE_ERROR(ParseError);

#undef ZTOWER_DEFINE_ERROR

}  // namespace ztower
