#include "fdrs/problems.hpp"

#include <random>

namespace fdrs {

namespace {

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) M(i, j) = normal(rng);
    }
    return M;
}

}  // namespace

Vector random_vector(Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return gaussian(dim, 1, rng).col(0);
}

Matrix random_psd(Index dim, std::uint64_t seed, double shift) {
    std::mt19937_64 rng(seed);
    const Matrix M = gaussian(dim, dim, rng);
    Matrix Q = M * M.transpose() / static_cast<double>(dim);
    Q = 0.5 * (Q + Q.transpose());
    Q.diagonal().array() += shift;
    return Q;
}

AffineReduction qp_problem(const QpSpec& qp, std::optional<double> beta_v) {
    return affine_reduction(FunctionDescriptor::box(qp.lower, qp.upper), FunctionDescriptor::quadratic(qp.Q, qp.c),
                            qp.A, qp.b, beta_v);
}

QpSpec random_box_qp(Index dim, Index rank, std::uint64_t seed) {
    if (dim <= 0 || rank < 0 || rank >= dim) throw ParameterError("random_box_qp: need 0 <= rank < dim");
    std::mt19937_64 rng(seed);
    QpSpec qp;
    const Matrix M = gaussian(dim, dim, rng);
    qp.Q = M * M.transpose() / static_cast<double>(dim);
    qp.Q = 0.5 * (qp.Q + qp.Q.transpose());
    qp.c = gaussian(dim, 1, rng).col(0);
    qp.lower = Vector::Zero(dim);
    qp.upper = Vector::Ones(dim);
    qp.A = gaussian(rank, dim, rng);
    qp.b = Vector::Zero(rank);
    return qp;
}

SplitProblem random_strongly_convex_problem(Index dim, Index rank, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix A = gaussian(rank, dim, rng);
    const Matrix B = gaussian(dim, dim / 2, rng);
    const Matrix Q = random_psd(dim, seed + 1, 0.5);
    const Vector c = random_vector(dim, seed + 2);
    return make_problem(FunctionDescriptor::subspace_plus_sq_norm(Subspace::span_of(B), 1.0),
                        FunctionDescriptor::quadratic(Q, c), Subspace::null_space(A));
}

SplitProblem random_smooth_problem(Index dim, Index rank, double a, double q_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix A = gaussian(rank, dim, rng);
    Matrix Q = random_psd(dim, seed + 1);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
    Q *= q_max / eig.eigenvalues().maxCoeff();
    Q = 0.5 * (Q + Q.transpose());
    const Vector c = random_vector(dim, seed + 2);
    const Vector u = random_vector(dim, seed + 3);
    return make_problem(FunctionDescriptor::shifted_sq_norm(a, u), FunctionDescriptor::quadratic(Q, c),
                        Subspace::null_space(A));
}

Vector AnalyticInstance::z_star(double gamma) const {
    return x_star + gamma * problem.V.project_complement(u);
}

AnalyticInstance analytic_instance(Index dim, Index rank, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix A = gaussian(rank, dim, rng);
    Vector u = gaussian(dim, 1, rng).col(0);
    Subspace V = Subspace::null_space(A);
    Vector x_star = 0.5 * V.project(u);
    SplitProblem p = make_problem(FunctionDescriptor::shifted_sq_norm(1.0, u),
                                  FunctionDescriptor::shifted_sq_norm(1.0, Vector::Zero(dim)), V, 1.0);
    return AnalyticInstance{std::move(p), std::move(u), std::move(x_star)};
}

}  // namespace fdrs
