#pragma once

#include <stdexcept>
#include <string>

namespace klab {

// Every failure carries a short machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define KLAB_ERROR(Name)                                                   \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

KLAB_ERROR(SingularMatrix);
KLAB_ERROR(DimensionMismatch);
KLAB_ERROR(NotSL2Z);
KLAB_ERROR(NotKodaira);
KLAB_ERROR(OutOfDomain);
KLAB_ERROR(NoExponentData);
KLAB_ERROR(NotInMW0);
KLAB_ERROR(NonpositiveEpsilon);
KLAB_ERROR(DomainError);
KLAB_ERROR(BadIndex);
KLAB_ERROR(ConvergenceGuard);
KLAB_ERROR(PoleHit);
KLAB_ERROR(ZeroChi);
KLAB_ERROR(HypothesisFailed);
KLAB_ERROR(OutOfInterval);
KLAB_ERROR(DegenerateDenominator);
KLAB_ERROR(BadOrder);
KLAB_ERROR(ValidationError);

#undef KLAB_ERROR

class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : Error("ParseError", what), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

} // namespace klab
