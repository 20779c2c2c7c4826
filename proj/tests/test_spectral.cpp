#include "doctest.h"
#include "oracles.hpp"

#include "fdrs/spectral.hpp"

using namespace fdrs;

TEST_CASE("power method on a diagonal map") {
    Vector d(3);
    d << 3, 1, 0.5;
    const auto est = power_method([&](const Vector& x) -> Vector { return d.cwiseProduct(x); }, 3, 1e-12);
    CHECK(est.value == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(est.residual <= 1e-12);
}

TEST_CASE("power method on the zero map") {
    const auto est = power_method([](const Vector& x) -> Vector { return Vector::Zero(x.size()); }, 4);
    CHECK(est.value == 0.0);
}

TEST_CASE("power method errors") {
    const LinearMap id = [](const Vector& x) -> Vector { return x; };
    CHECK_THROWS_AS(power_method(id, 0), DimensionError);
    CHECK_THROWS_AS(power_method(id, 3, 0.0), ParameterError);
    CHECK_THROWS_AS(power_method([](const Vector&) -> Vector { return Vector::Zero(2); }, 3), DimensionError);
    // a tie between +1 and -1 never settles
    const LinearMap flip = [](const Vector& x) -> Vector {
        Vector y = x;
        y(1) = -y(1);
        return y;
    };
    CHECK_THROWS_AS(power_method(flip, 2, 1e-12, 50), NumericalError);
}

TEST_CASE("betas agree with a dense eigensolver") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const Index d = 6 + t;
        const Matrix Q = oracle::psd(d, rng);
        const Matrix A = oracle::gaussian(1 + t % 3, d, rng);
        const auto V = Subspace::null_space(A);
        const auto est = estimate_betas(Q, V, 1e-12);
        const Matrix P = oracle::null_projector(A);
        const double lq = oracle::max_eigenvalue(Q), lv = oracle::max_eigenvalue(P * Q * P);
        CHECK(1.0 / est.beta == doctest::Approx(lq).epsilon(1e-8));
        CHECK(1.0 / est.beta_v == doctest::Approx(lv).epsilon(1e-8));
        CHECK(est.beta_v >= est.beta);
        CHECK(est.advisory.empty());
    }
}

TEST_CASE("beta_v is unbounded when Q vanishes on V") {
    Matrix Q = Matrix::Zero(3, 3);
    Q(2, 2) = 2.0;
    const auto V = Subspace::coordinate_span({true, true, false});
    const auto est = estimate_betas(Q, V);
    CHECK(est.beta == doctest::Approx(0.5));
    CHECK(std::isinf(est.beta_v));
    CHECK_FALSE(est.advisory.empty());
}

TEST_CASE("estimates depend only on the seed") {
    std::mt19937_64 rng(9);
    const Matrix Q = oracle::psd(20, rng);
    const auto V = Subspace::null_space(oracle::gaussian(3, 20, rng));
    const auto a = estimate_betas(Q, V, 1e-10, 42), b = estimate_betas(Q, V, 1e-10, 42);
    CHECK(a.beta == b.beta);
    CHECK(a.beta_v == b.beta_v);
    CHECK(a.full.iterations == b.full.iterations);
}
