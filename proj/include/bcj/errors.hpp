#ifndef BCJ_ERRORS_HPP
#define BCJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bcj {

// Base class for all precondition violations raised by the library.
// The CLI maps these to exit code 1 and reports what() verbatim.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

#define BCJ_DEFINE_ERROR(Name)                                              \
    struct Name : DomainError {                                             \
        explicit Name(const std::string& what)                              \
            : DomainError(std::string(#Name) + ": " + what) {}              \
    }

BCJ_DEFINE_ERROR(DimensionMismatch);
BCJ_DEFINE_ERROR(NotSymplectic);
BCJ_DEFINE_ERROR(MixedShapes);
BCJ_DEFINE_ERROR(ContextMismatch);
BCJ_DEFINE_ERROR(NotGenus1Sigma);
BCJ_DEFINE_ERROR(NotUnimodular);
BCJ_DEFINE_ERROR(BadParityPattern);
BCJ_DEFINE_ERROR(NotCoprime);
BCJ_DEFINE_ERROR(FrameInvalid);
BCJ_DEFINE_ERROR(NotInSpan);
BCJ_DEFINE_ERROR(HypothesisViolation);
BCJ_DEFINE_ERROR(ParseError);
BCJ_DEFINE_ERROR(UnsupportedGenus);

#undef BCJ_DEFINE_ERROR

} // namespace bcj

#endif
