#pragma once

#include <stdexcept>
#include <string>

namespace nckdv {

// Base class for all workbench errors so callers can catch one type.
struct NckdvError : std::runtime_error {
    explicit NckdvError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by x_integrate when the argument is not in the image of d/dx.
struct NotATotalDerivative : NckdvError {
    explicit NotATotalDerivative(const std::string& what) : NckdvError(what) {}
};

// Thrown when a Moyal expansion cannot be bounded (no order cap, no usable
// mu cap, and both factors depend on u so the star sum never terminates).
struct UnboundedStarSum : NckdvError {
    explicit UnboundedStarSum(const std::string& what) : NckdvError(what) {}
};

// Thrown by binary PsiDO operations when the operands carry different
// truncation windows.
struct TruncationMismatch : NckdvError {
    explicit TruncationMismatch(const std::string& what) : NckdvError(what) {}
};

// Thrown by sqrt_op when the argument is not dx^2 plus lower-order terms
// (within the window), so the defect iteration cannot close.
struct NotMonicOrderTwo : NckdvError {
    explicit NotMonicOrderTwo(const std::string& what) : NckdvError(what) {}
};

// Thrown by flow() when [(L^{n+1/2})_+, L] has residual terms of order > 0,
// which would mean the Lax pair does not close.
struct CommutatorNotOrderZero : NckdvError {
    explicit CommutatorNotOrderZero(const std::string& what) : NckdvError(what) {}
};

// Thrown by mode_expand when a monomial's u-factor count does not match the
// number of supplied modes.
struct ModeArityMismatch : NckdvError {
    explicit ModeArityMismatch(const std::string& what) : NckdvError(what) {}
};

// Thrown by the tau solver when elimination derives 0 = c with c nonzero.
struct InconsistentSystem : NckdvError {
    explicit InconsistentSystem(const std::string& what) : NckdvError(what) {}
};

// Thrown by polynomial_fit when held-out samples disagree with the fit.
struct FitValidationFailed : NckdvError {
    explicit FitValidationFailed(const std::string& what) : NckdvError(what) {}
};

}  // namespace nckdv
