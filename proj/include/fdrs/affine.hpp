#pragma once

#include "fdrs/operators.hpp"

namespace fdrs {

struct AffineReduction {
    SplitProblem problem;  // f(. + shift) + g(. + shift) over null(A)
    Vector shift;          // minimal-norm solution of A x = b
};

/// Rewrites min f + g s.t. A x = b as a problem over null(A).  A solution
/// x of the reduced problem maps back to x + shift.
AffineReduction affine_reduction(const FunctionDescriptor& f, const FunctionDescriptor& g, const Matrix& A,
                                 const Vector& b, std::optional<double> beta_v = std::nullopt);

/// Minimal-norm solution A^T (A A^T)^+ b; throws ParameterError when the
/// system is inconsistent beyond 1e-9 (1 + ||b||).
Vector minimal_norm_solution(const Matrix& A, const Vector& b);

}  // namespace fdrs
