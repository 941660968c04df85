#ifndef GRAMOPS_ERRORS_HPP
#define GRAMOPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gramops {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GRAMOPS_DEFINE_ERROR(Name)          \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

// Dense kernel errors.
GRAMOPS_DEFINE_ERROR(DimMismatch);     // incompatible matrix dimensions
GRAMOPS_DEFINE_ERROR(NonConvergence);  // an iterative decomposition did not settle
GRAMOPS_DEFINE_ERROR(NotHermitian);
GRAMOPS_DEFINE_ERROR(NotPositive);
GRAMOPS_DEFINE_ERROR(IndexOutOfRange);

// Block algebra / operator errors.
GRAMOPS_DEFINE_ERROR(ShapeMismatch);   // operands live over different algebras
GRAMOPS_DEFINE_ERROR(StructureLoss);   // a reassembled pseudoinverse failed the module-linearity check
GRAMOPS_DEFINE_ERROR(NotInCommutant);
GRAMOPS_DEFINE_ERROR(NoConvergence);   // the regularized inverse iteration stalled above its stop tolerance
GRAMOPS_DEFINE_ERROR(LimitExceeded);   // request beyond a documented size cap

// Case file errors.
GRAMOPS_DEFINE_ERROR(ParseError);
GRAMOPS_DEFINE_ERROR(ValidationError);
GRAMOPS_DEFINE_ERROR(InvalidRank);

#undef GRAMOPS_DEFINE_ERROR

} // namespace gramops

#endif
