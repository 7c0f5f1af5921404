// errors.hpp
// Domain error types.  Checks that produce reports do not throw; these are
// for contract violations (bad input, undeclared identifiers, singular data).
#pragma once

#include <stdexcept>
#include <string>

namespace alab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ALAB_ERROR_TYPE(Name)                          \
    struct Name : Error {                              \
        explicit Name(const std::string& msg = #Name)  \
            : Error(std::string(#Name) + ": " + msg) {} \
    }

ALAB_ERROR_TYPE(UnknownIdentifier);
ALAB_ERROR_TYPE(DivisionByZeroExpression);
ALAB_ERROR_TYPE(PoleAtPoint);
ALAB_ERROR_TYPE(TranscendentalValue);
ALAB_ERROR_TYPE(RankMismatch);
ALAB_ERROR_TYPE(DegreeMismatch);
ALAB_ERROR_TYPE(SingularPoint);
ALAB_ERROR_TYPE(SpanningHypothesisFails);
ALAB_ERROR_TYPE(NonFactorableQuotient);
ALAB_ERROR_TYPE(NotWeightHomogeneous);
ALAB_ERROR_TYPE(NotRegular);
ALAB_ERROR_TYPE(SubcomplexViolation);
ALAB_ERROR_TYPE(ModularClassNotNull);
ALAB_ERROR_TYPE(NotLeibniz);
ALAB_ERROR_TYPE(NotRepresentation);
ALAB_ERROR_TYPE(ParseError);
ALAB_ERROR_TYPE(ValidationError);

#undef ALAB_ERROR_TYPE

} // namespace alab
