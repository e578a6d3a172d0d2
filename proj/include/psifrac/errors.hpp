#pragma once

#include <stdexcept>
#include <string>

namespace psifrac {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PSIFRAC_DEFINE_ERROR(Name)           \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

PSIFRAC_DEFINE_ERROR(DomainError);     // interval leaves the natural domain
PSIFRAC_DEFINE_ERROR(ParamError);      // parameter violates a documented constraint
PSIFRAC_DEFINE_ERROR(RangeError);      // argument outside the image/domain of a map
PSIFRAC_DEFINE_ERROR(OrderError);      // derivative order not available
PSIFRAC_DEFINE_ERROR(NonConvergence);  // adaptive subdivision cap reached
PSIFRAC_DEFINE_ERROR(EvalError);       // integrand or function produced NaN/inf
PSIFRAC_DEFINE_ERROR(RegimeError);     // alpha/p outside a norm regime's hypotheses
PSIFRAC_DEFINE_ERROR(HypothesisError); // a checked hypothesis does not hold numerically
PSIFRAC_DEFINE_ERROR(IndexError);      // partition index outside [0, m]
PSIFRAC_DEFINE_ERROR(ConfigError);     // malformed suite configuration

#undef PSIFRAC_DEFINE_ERROR

} // namespace psifrac
