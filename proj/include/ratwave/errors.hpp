#ifndef RATWAVE_ERRORS_HPP
#define RATWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ratwave {

/// Base class of every error thrown by the library. `kind()` is a stable
/// identifier used in machine-readable diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define RATWAVE_DEFINE_ERROR(Name)                                                   \
    class Name : public Error {                                                      \
    public:                                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {}               \
    }

RATWAVE_DEFINE_ERROR(ZeroConstantTerm);
RATWAVE_DEFINE_ERROR(ModeMismatch);
RATWAVE_DEFINE_ERROR(SingularSystem);
RATWAVE_DEFINE_ERROR(DegeneratePair);
RATWAVE_DEFINE_ERROR(DegreeMismatch);
RATWAVE_DEFINE_ERROR(UnsupportedGenus);
RATWAVE_DEFINE_ERROR(RootFindingFailure);
RATWAVE_DEFINE_ERROR(BudgetExceeded);
RATWAVE_DEFINE_ERROR(ParseError);
RATWAVE_DEFINE_ERROR(DivisionByZero);
RATWAVE_DEFINE_ERROR(InvalidArgument);

#undef RATWAVE_DEFINE_ERROR

/// Raised when a check that carries a numeric defect fails.
class ResidualError : public Error {
public:
    ResidualError(std::string kind, const std::string& what, double residual)
        : Error(std::move(kind), what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class RoundTripMismatch : public ResidualError {
public:
    RoundTripMismatch(const std::string& what, double residual)
        : ResidualError("RoundTripMismatch", what, residual) {}
};

class NotParaunitary : public ResidualError {
public:
    NotParaunitary(const std::string& what, double residual)
        : ResidualError("NotParaunitary", what, residual) {}
};

} // namespace ratwave

#endif // RATWAVE_ERRORS_HPP
