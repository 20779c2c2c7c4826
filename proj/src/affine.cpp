#include "fdrs/affine.hpp"

namespace fdrs {

Vector minimal_norm_solution(const Matrix& A, const Vector& b) {
    require_dim(b.size(), A.rows(), "minimal_norm_solution: b");
    if (b.size() == 0 || b.isZero(0.0)) return Vector::Zero(A.cols());
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    cod.setThreshold(1e-12);
    Vector x = cod.solve(b);
    const double residual = (A * x - b).norm();
    if (!(residual <= 1e-9 * (1.0 + b.norm()))) {
        throw ParameterError("affine constraints are infeasible: ||A x_p - b|| = " + std::to_string(residual));
    }
    return x;
}

AffineReduction affine_reduction(const FunctionDescriptor& f, const FunctionDescriptor& g, const Matrix& A,
                                 const Vector& b, std::optional<double> beta_v) {
    require_dim(A.cols(), f.dim(), "affine_reduction: A");
    Vector xp = minimal_norm_solution(A, b);
    SplitProblem p = make_problem(shifted(f, xp), shifted(g, xp), Subspace::null_space(A), beta_v);
    return AffineReduction{std::move(p), std::move(xp)};
}

}  // namespace fdrs
