#include "doctest.h"
#include "oracles.hpp"

#include "fdrs/primal_dual.hpp"
#include "fdrs/problems.hpp"

using namespace fdrs;

namespace {

IterationTrace fdrs_run(const SplitProblem& p, double gamma, long iters, const Vector& z0) {
    SolveConfig cfg;
    cfg.gamma = gamma;
    cfg.lambda_schedule = schedule::Constant{1.0};
    cfg.max_iter = iters;
    cfg.fpr_tol = 0.0;
    cfg.z0 = z0;
    return run(p, cfg);
}

}  // namespace

TEST_CASE("primal-dual iteration against a dense re-derivation") {
    // box [0,1]^4, g = (1/2) x'Qx + c'x, V = null(A) with dense projector from the SVD
    std::mt19937_64 rng(2);
    const Matrix A = oracle::gaussian(1, 4, rng);
    const Matrix P = oracle::null_projector(A);
    const Matrix Q = oracle::psd(4, rng);
    const Vector c = oracle::gaussian(4, rng);
    const auto p = make_problem(FunctionDescriptor::box(Vector::Zero(4), Vector::Ones(4)),
                                FunctionDescriptor::quadratic(Q, c), Subspace::null_space(A));
    const double gamma = 0.4;
    Vector y = (Matrix::Identity(4, 4) - P) * oracle::gaussian(4, rng);
    Vector x = oracle::gaussian(4, rng);
    const auto states = run_pd(p, gamma, 30, y, x);
    REQUIRE(states.size() == 31);
    for (long k = 1; k <= 30; ++k) {
        const Vector y_next = (Matrix::Identity(4, 4) - P) * (y - x / gamma);
        const Vector arg = x - gamma * P * (Q * (P * x) + c) + gamma * (2 * y_next - y);
        x = arg.cwiseMax(0.0).cwiseMin(1.0);
        y = y_next;
        CHECK((states[static_cast<std::size_t>(k)].y - y).norm() <= 1e-12 * (1 + y.norm()));
        CHECK((states[static_cast<std::size_t>(k)].x_f - x).norm() <= 1e-12 * (1 + x.norm()));
    }
}

TEST_CASE("FDRS with lambda = 1 and the primal-dual iteration coincide") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto red = qp_problem(random_box_qp(5, 2, seed));
        const auto& p = red.problem;
        const double gamma = p.beta_v;
        std::mt19937_64 rng(seed);
        const Vector z0 = oracle::gaussian(5, rng);
        const auto trace = fdrs_run(p, gamma, 300, z0);
        const auto init = initial_state_from_fdrs(p, z0, gamma);
        CHECK((init.y + p.V.project_complement(z0) / gamma).norm() <= 1e-14 * (1 + z0.norm()));
        const auto pd = run_pd(p, gamma, 300, init.y, init.x_f);
        const auto rep = equivalence_check(trace, pd, gamma);
        CHECK(rep.compared == static_cast<long>(trace.records.size()));
        CHECK(rep.max_primal_deviation <= 1e-10 * (1 + rep.max_primal_norm));
        CHECK(rep.max_dual_deviation <= 1e-10);
        CHECK_FALSE(rep.mapping.empty());
    }
}

TEST_CASE("a mismatched dual start is detected") {
    const auto red = qp_problem(random_box_qp(5, 2, 4));
    const auto& p = red.problem;
    const Vector z0 = Vector::Constant(5, 3.0);
    const auto trace = fdrs_run(p, p.beta_v, 50, z0);
    auto init = initial_state_from_fdrs(p, z0, p.beta_v);
    const auto pd = run_pd(p, p.beta_v, 50, p.V.project_complement(Vector::Constant(5, 1.0)) + init.y, init.x_f);
    CHECK(equivalence_check(trace, pd, p.beta_v).max_dual_deviation > 1e-3);
}

TEST_CASE("primal-dual argument validation") {
    const auto red = qp_problem(random_box_qp(5, 2, 5));
    const Vector z = Vector::Zero(5);
    CHECK_THROWS_AS(run_pd(red.problem, 0.0, 5, z, z), ParameterError);
    CHECK_THROWS_AS(run_pd(red.problem, 1.0, -1, z, z), ParameterError);
    CHECK_THROWS_AS(run_pd(red.problem, 1.0, 5, Vector::Zero(4), z), DimensionError);
    CHECK(run_pd(red.problem, 1.0, 0, z, z).size() == 1);
}
