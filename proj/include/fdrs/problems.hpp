#pragma once

#include "fdrs/affine.hpp"

#include <cstdint>

namespace fdrs {

/// min (1/2) x^T Q x + c^T x  s.t.  l <= x <= u,  A x = b.
struct QpSpec {
    Matrix Q;
    Vector c;
    Vector lower;
    Vector upper;
    Matrix A;
    Vector b;
};

/// f = box indicator, g = the quadratic, V = null(A) after shifting by the
/// minimal-norm solution of A x = b.
AffineReduction qp_problem(const QpSpec& qp, std::optional<double> beta_v = std::nullopt);

/// Random instance: Q = M M^T / d with Gaussian M, Gaussian c, box [0, 1]^d,
/// Gaussian A with `rank` rows, b = 0.
QpSpec random_box_qp(Index dim, Index rank, std::uint64_t seed = 7);

/// Random symmetric PSD matrix M M^T / d (plus shift * I).
Matrix random_psd(Index dim, std::uint64_t seed, double shift = 0.0);

/// Gaussian vector with the given seed.
Vector random_vector(Index dim, std::uint64_t seed);

/// f = chi_U + (1/2)||.||^2 with U a random subspace of dimension dim/2,
/// g = (1/2) x^T Q x + c^T x with Q positive definite, V = null(A).
SplitProblem random_strongly_convex_problem(Index dim, Index rank, std::uint64_t seed = 7);

/// f = (a/2)||x - u||^2, g = (1/2) x^T Q x + c^T x with lambda_max(Q) = q_max, V = null(A).
SplitProblem random_smooth_problem(Index dim, Index rank, double a, double q_max, std::uint64_t seed = 7);

/// f = (1/2)||x - u||^2, g = (1/2)||x||^2, V = null(A); every constant is 1 and
/// the solution is known in closed form.
struct AnalyticInstance {
    SplitProblem problem;
    Vector u;
    Vector x_star;  // P_V u / 2
    /// z* = x* + gamma P_{V^perp} u.
    Vector z_star(double gamma) const;
};
AnalyticInstance analytic_instance(Index dim, Index rank, std::uint64_t seed = 7);

}  // namespace fdrs
