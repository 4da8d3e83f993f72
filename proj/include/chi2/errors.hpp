#pragma once

#include <stdexcept>
#include <string>

namespace chi2 {

// Maps onto CLI exit codes: Usage -> 2, Numeric -> 3, Infeasible -> 4.
enum class ErrorClass { Usage, Numeric, Infeasible };

class Error : public std::runtime_error {
public:
    Error(const char* kind, ErrorClass cls, const std::string& msg)
        : std::runtime_error(std::string(kind) + ": " + msg), kind_(kind), cls_(cls) {}

    const char* kind() const noexcept { return kind_; }
    ErrorClass error_class() const noexcept { return cls_; }

private:
    const char* kind_;
    ErrorClass cls_;
};

#define CHI2_ERROR(Name, Cls)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& msg) : Error(#Name, Cls, msg) {}      \
    };

CHI2_ERROR(OutOfBand, ErrorClass::Usage)
CHI2_ERROR(InvalidParam, ErrorClass::Usage)
CHI2_ERROR(ConfigInvalid, ErrorClass::Usage)
CHI2_ERROR(NoRoot, ErrorClass::Numeric)
CHI2_ERROR(NoConvergence, ErrorClass::Numeric)
CHI2_ERROR(QuadratureFailure, ErrorClass::Numeric)
CHI2_ERROR(NonPhysical, ErrorClass::Numeric)
CHI2_ERROR(NoPhaseMatch, ErrorClass::Infeasible)
CHI2_ERROR(Unstable, ErrorClass::Infeasible)
CHI2_ERROR(Infeasible, ErrorClass::Infeasible)
CHI2_ERROR(Unreachable, ErrorClass::Infeasible)
CHI2_ERROR(Inconsistent, ErrorClass::Infeasible)
CHI2_ERROR(Unachievable, ErrorClass::Infeasible)
CHI2_ERROR(TotalInternalReflection, ErrorClass::Infeasible)

#undef CHI2_ERROR

} // namespace chi2
