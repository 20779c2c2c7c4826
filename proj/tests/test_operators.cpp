#include "doctest.h"
#include "oracles.hpp"

#include "fdrs/counterexamples.hpp"
#include "fdrs/operators.hpp"

using namespace fdrs;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

SplitProblem random_problem(Index d, std::mt19937_64& rng, int variant) {
    const Subspace V = Subspace::null_space(oracle::gaussian(1 + d / 4, d, rng));
    const auto g = FunctionDescriptor::quadratic(oracle::psd(d, rng), oracle::gaussian(d, rng));
    switch (variant % 3) {
        case 0: return make_problem(FunctionDescriptor::box(Vector::Zero(d), Vector::Ones(d)), g, V);
        case 1: return make_problem(FunctionDescriptor::shifted_sq_norm(1.3, oracle::gaussian(d, rng)), g, V);
        default:
            return make_problem(FunctionDescriptor::subspace_plus_sq_norm(Subspace::span_of(oracle::gaussian(d, 1 + d / 2, rng)), 0.5),
                                g, V);
    }
}

}  // namespace

TEST_CASE("averaged composition coefficient") {
    CHECK(averaged_composition_coefficient(0.5, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(averaged_composition_coefficient(2.0 / 3.0, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
    for (int t = 0; t < 1000; ++t) {
        const double a1 = u(rng), a2 = u(rng);
        const double a = averaged_composition_coefficient(a1, a2);
        CHECK(a > std::max(a1, a2));
        CHECK(a < 1.0);
    }
    CHECK_THROWS_AS(averaged_composition_coefficient(0.0, 0.5), ParameterError);
    CHECK_THROWS_AS(averaged_composition_coefficient(0.5, 1.0), ParameterError);
}

TEST_CASE("alpha of the FDRS operator") {
    CHECK(alpha_fdrs(1.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(alpha_fdrs(3.0, 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(alpha_fdrs(1e-12, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alpha_fdrs(1.0, kInf) == 0.5);
    // composition of the 1/2-averaged DRS part and the gamma/(2 beta_v)-averaged gradient step
    CHECK(alpha_fdrs(0.7, 1.0) == doctest::Approx(averaged_composition_coefficient(0.5, 0.35)).epsilon(1e-14));
    CHECK_THROWS_AS(alpha_fdrs(2.0, 1.0), ParameterError);
    CHECK_THROWS_AS(alpha_fdrs(0.0, 1.0), ParameterError);
}

TEST_CASE("make_problem validates its parts") {
    const auto box = FunctionDescriptor::box(Vector::Zero(2), Vector::Ones(2));
    const auto q = FunctionDescriptor::quadratic(Matrix::Identity(2, 2), Vector::Zero(2));
    CHECK_THROWS_AS(make_problem(q, box, Subspace::whole(2)), ParameterError);
    CHECK_THROWS_AS(make_problem(box, q, Subspace::whole(2), 0.5), ParameterError);
    CHECK_THROWS_AS(make_problem(box, q, Subspace::whole(3)), DimensionError);
    const auto p = make_problem(box, q, Subspace::whole(2));
    CHECK(p.beta == 1.0);
    CHECK(p.beta_v == 1.0);
    CHECK(p.beta_f == 0.0);
    CHECK(p.mu_g == 1.0);
}

TEST_CASE("f = g = 0 gives the projection") {
    std::mt19937_64 rng(2);
    const auto V = Subspace::null_space(oracle::gaussian(2, 5, rng));
    const auto p = make_problem(FunctionDescriptor::zero(5), FunctionDescriptor::zero(5), V);
    for (int t = 0; t < 20; ++t) {
        const Vector z = oracle::gaussian(5, rng);
        CHECK((apply_fdrs(p, z, 0.3 + t).z_next - V.project(z)).norm() <= 1e-14 * (1 + z.norm()));
    }
}

TEST_CASE("rotation block: assembled operator against the block formula") {
    const double c = std::sqrt(0.5);
    const Eigen::Matrix2d M = fdrs_block_matrix(c, 1.0);
    CHECK((M - (Eigen::Matrix2d() << 0, -0.25, 0, 0.75).finished()).norm() < 1e-15);
    RotationInstance inst{{c}, 1.0};
    const auto step = apply_fdrs(inst.problem(), vec({0, 1}), 1.0);
    CHECK((step.z_next - vec({-0.25, 0.75})).norm() < 1e-15);
}

TEST_CASE("step identities on random problems") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const Index d = 2 + t % 20;
        const auto p = random_problem(d, rng, t);
        const Vector z = 3 * oracle::gaussian(d, rng);
        const double gamma = (0.1 + 1.8 * (t % 10) / 10.0) * p.beta_v;
        const auto s = apply_fdrs(p, z, gamma);
        const double tol = 1e-12 * (1 + z.norm());
        CHECK((s.x_h - p.V.project(z)).norm() <= tol);
        CHECK(p.V.project(s.subgrad_chi).norm() <= tol);
        CHECK((gamma * s.subgrad_chi - p.V.project_complement(z)).norm() <= tol);
        CHECK((s.x_f - (s.x_h - gamma * (s.subgrad_chi + s.grad_h + s.subgrad_f))).norm() <= tol);
        CHECK((s.z_next - (s.x_f + gamma * s.subgrad_chi)).norm() <= tol);
        CHECK((s.grad_h - p.grad_h(z)).norm() <= tol);
    }
}

TEST_CASE("averagedness inequality") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const Index d = 3 + t % 10;
        const auto p = random_problem(d, rng, t);
        const double gamma = (0.2 + 1.7 * (t % 7) / 7.0) * p.beta_v;
        const double a = alpha_fdrs(gamma, p.beta_v);
        const Vector z = oracle::gaussian(d, rng), w = oracle::gaussian(d, rng);
        const Vector Tz = apply_fdrs(p, z, gamma).z_next, Tw = apply_fdrs(p, w, gamma).z_next;
        const double lhs = (Tz - Tw).squaredNorm();
        const double rhs = (z - w).squaredNorm() - (1 - a) / a * ((z - Tz) - (w - Tw)).squaredNorm();
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("relaxation") {
    const Vector z = vec({1, 2}), Tz = vec({5, -1});
    CHECK((relax(z, Tz, 1.0) - Tz).norm() == 0.0);
    CHECK((relax(z, Tz, 0.0) - z).norm() == 0.0);
    CHECK((relax(vec({0, 0}), vec({2, 4}), 0.5) - vec({1, 2})).norm() == 0.0);
}

TEST_CASE("fixed points from optimal triples") {
    // V = whole space: z* = x*
    const auto g = FunctionDescriptor::quadratic(Matrix::Identity(2, 2), vec({-1, -4}));
    const auto p = make_problem(FunctionDescriptor::zero(2), g, Subspace::whole(2));
    const Vector xs = vec({1, 4});
    CHECK((fixed_point_from_minimizer(p, xs, Vector::Zero(2), 0.5) - xs).norm() == 0.0);

    // rotation family: 0 is the fixed point
    RotationInstance inst{{0.3, 0.8}, 1.0};
    CHECK(fixed_point_from_minimizer(inst.problem(), Vector::Zero(4), Vector::Zero(4), 1.0).norm() == 0.0);

    // 2-d QP with both upper bounds active, V = {x_1 = x_2}:
    // min (1/2)||x||^2 - 3 x_1 - 2 x_2 over x in [0, 1]^2 with x_1 = x_2.
    // KKT from the oracle: x* = (1, 1), multipliers give the V-perp component.
    Matrix A(1, 2);
    A << 1, -1;
    const auto V = Subspace::null_space(A);
    const auto box = FunctionDescriptor::box(Vector::Zero(2), Vector::Ones(2));
    const auto q = FunctionDescriptor::quadratic(Matrix::Identity(2, 2), vec({-3, -2}));
    const auto qp = make_problem(box, q, V);
    const auto sol = oracle::box_qp_active_set(Matrix::Identity(2, 2), vec({-3, -2}), Vector::Zero(2), Vector::Ones(2),
                                               A, Vector::Zero(1), Vector::Zero(2));
    REQUIRE(sol.ok);
    CHECK((sol.x - vec({1, 1})).norm() < 1e-12);
    // -r in N_box(x*), so chi = r - grad h(x*) = A' nu + P_{V-perp}(Q x* + c)
    const Vector chi = A.transpose() * sol.nu + V.project_complement(sol.x - vec({3, 2}));
    const Vector zs = fixed_point_from_minimizer(qp, sol.x, chi, 0.7);
    CHECK((apply_fdrs(qp, zs, 0.7).z_next - zs).norm() <= 1e-10);

    CHECK_THROWS_AS(fixed_point_from_minimizer(qp, vec({0.5, 0.5}), Vector::Zero(2), 0.7), NumericalError);
}

TEST_CASE("special cases reduce to DRS, FBS and projected gradient") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        const Index d = 2 + t % 12;
        const Subspace V = Subspace::null_space(oracle::gaussian(1 + t % 2, d, rng));
        const auto f = FunctionDescriptor::box(-Vector::Ones(d), Vector::Ones(d));
        const Matrix Q = oracle::psd(d, rng);
        const Vector c = oracle::gaussian(d, rng);
        const auto g = FunctionDescriptor::quadratic(Q, c);
        const Vector z = 2 * oracle::gaussian(d, rng);
        const Matrix P = V.dense_projector();
        const double gamma = 0.3 + 0.01 * t;

        // g = 0: (1/2)(I + refl_f refl_V)
        const auto drs = make_problem(f, FunctionDescriptor::zero(d), V);
        const Vector rv = 2 * P * z - z;
        const Vector refl_f = 2 * rv.cwiseMax(-1.0).cwiseMin(1.0) - rv;
        CHECK((apply_fdrs(drs, z, gamma).z_next - 0.5 * (z + refl_f)).norm() <= 1e-12 * (1 + z.norm()));

        // V = whole space: prox_f(z - gamma grad g(z))
        const auto fbs = make_problem(f, g, Subspace::whole(d));
        const Vector fb = (z - gamma * (Q * z + c)).cwiseMax(-1.0).cwiseMin(1.0);
        CHECK((apply_fdrs(fbs, z, gamma).z_next - fb).norm() <= 1e-12 * (1 + z.norm()));

        // f = 0: P_V(z - gamma P_V grad g(P_V z))
        const auto pg = make_problem(FunctionDescriptor::zero(d), g, V);
        const Vector proj = P * (z - gamma * P * (Q * (P * z) + c));
        CHECK((apply_fdrs(pg, z, gamma).z_next - proj).norm() <= 1e-12 * (1 + z.norm()));
    }
}

TEST_CASE("h agrees with g on V") {
    std::mt19937_64 rng(7);
    const auto p = random_problem(8, rng, 0);
    for (int t = 0; t < 20; ++t) {
        const Vector x = p.V.project(oracle::gaussian(8, rng));
        CHECK(p.eval_h(x) == p.g.eval(p.V.project(x)));
        CHECK(p.eval_h(x) == doctest::Approx(p.g.eval(x)).epsilon(1e-12));
    }
}
