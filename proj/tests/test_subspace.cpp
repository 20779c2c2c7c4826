#include "doctest.h"
#include "oracles.hpp"

#include "fdrs/affine.hpp"
#include "fdrs/subspace.hpp"

#include <numbers>

using namespace fdrs;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

std::vector<Subspace> assorted(std::mt19937_64& rng) {
    std::vector<Subspace> out;
    out.push_back(Subspace::whole(6));
    out.push_back(Subspace::null_space(oracle::gaussian(2, 6, rng)));
    out.push_back(Subspace::span_of(oracle::gaussian(6, 3, rng)));
    out.push_back(Subspace::coordinate_span({true, false, true, true, false, false}));
    out.push_back(Subspace::diagonal_of_product(3, 2));
    const double angles[] = {0.3, 1.1, std::numbers::pi / 2};
    out.push_back(Subspace::block_rotation_angles(angles));
    out.push_back(Subspace::block_axis(3));
    return out;
}

}  // namespace

TEST_CASE("null-space projection examples") {
    Matrix A(1, 2);
    A << 1, 1;
    const auto V = Subspace::null_space(A);
    CHECK((V.project(vec({3, 1})) - vec({1, -1})).norm() < 1e-14);
    CHECK((V.project_complement(vec({3, 1})) - vec({2, 2})).norm() < 1e-14);
    CHECK(V.project_complement(vec({1, -1})).norm() < 1e-14);
    CHECK(V.rank() == 1);
    CHECK_THROWS_AS(V.project(vec({1, 2, 3})), DimensionError);
}

TEST_CASE("rotation projector blocks") {
    const Eigen::Matrix2d half = rotation_projector_block(std::numbers::pi / 2);
    CHECK((half - (Eigen::Matrix2d() << 0, 0, 0, 1).finished()).norm() < 1e-15);
    const Eigen::Matrix2d quarter = rotation_projector_block(std::numbers::pi / 4);
    CHECK((quarter - Eigen::Matrix2d::Constant(0.5)).norm() < 1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi / 2);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Matrix2d P = rotation_projector_block(u(rng));
        CHECK((P * P - P).norm() < 1e-14);
        CHECK((P - P.transpose()).norm() < 1e-14);
    }
    // the V side of the family: span e_0 per block
    const auto V = Subspace::block_axis(1);
    CHECK((V.project(vec({3, 4})) - vec({3, 0})).norm() == 0.0);
}

TEST_CASE("block rotation subspace matches its 2x2 projectors") {
    const double angles[] = {0.2, 0.9, 1.5};
    const auto U = Subspace::block_rotation_angles(angles);
    const Matrix P = U.dense_projector();
    for (int i = 0; i < 3; ++i) {
        CHECK((P.block(2 * i, 2 * i, 2, 2) - rotation_projector_block(angles[i])).norm() < 1e-14);
    }
    CHECK(P.norm() == doctest::Approx(std::sqrt(3.0)));
    CHECK_THROWS_AS(Subspace::block_rotation_angles(std::vector<double>{0.0}), ParameterError);
    const std::vector<double> cos_in{0.0, 0.5, 0.99};
    CHECK(Subspace::block_rotation_cosines(cos_in).cosines() == cos_in);
}

TEST_CASE("diagonal of a product equals the null space of the consensus constraints") {
    const auto D = Subspace::diagonal_of_product(3, 1);
    CHECK((D.project(vec({1, 2, 6})) - vec({3, 3, 3})).norm() < 1e-14);
    Matrix A(2, 3);
    A << 1, -1, 0, 0, 1, -1;
    CHECK((D.dense_projector() - oracle::null_projector(A)).norm() < 1e-12);

    const auto D2 = Subspace::diagonal_of_product(4, 3);
    Matrix B = Matrix::Zero(9, 12);
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j) {
            B(3 * c + j, 3 * c + j) = 1;
            B(3 * c + j, 3 * (c + 1) + j) = -1;
        }
    CHECK((D2.dense_projector() - oracle::null_projector(B)).norm() < 1e-12);
}

TEST_CASE("projector properties on every variant") {
    std::mt19937_64 rng(31);
    for (const auto& V : assorted(rng)) {
        for (int t = 0; t < 100; ++t) {
            const Vector x = oracle::gaussian(V.dim(), rng), y = oracle::gaussian(V.dim(), rng);
            const Vector px = V.project(x);
            CHECK((V.project(px) - px).norm() <= 1e-12 * (1 + x.norm()));
            CHECK(std::abs(px.dot(y) - x.dot(V.project(y))) <= 1e-10 * (1 + x.norm() * y.norm()));
            // Moreau decomposition
            CHECK((px + V.project_complement(x) - x).norm() <= 1e-14 * (1 + x.norm()));
            CHECK(V.project(V.project_complement(x)).norm() <= 1e-12 * (1 + x.norm()));
            CHECK(V.reflect(x).norm() == doctest::Approx(x.norm()).epsilon(1e-12));
        }
    }
}

TEST_CASE("null space and span constructions agree, also for redundant rows") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const Index d = 4 + t % 7, m = 1 + t % 3;
        Matrix A = oracle::gaussian(m, d, rng);
        Matrix R(m + 1, d);
        R << A, A.row(0) * 2.0;  // redundant row
        const Matrix P = oracle::null_projector(A);
        const auto V1 = Subspace::null_space(R);
        Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
        const auto V2 = Subspace::span(svd.matrixV().rightCols(d - m));
        CHECK(V1.rank() == d - m);
        for (int k = 0; k < 5; ++k) {
            const Vector x = oracle::gaussian(d, rng);
            CHECK((V1.project(x) - P * x).norm() <= 1e-10 * (1 + x.norm()));
            CHECK((V2.project(x) - P * x).norm() <= 1e-10 * (1 + x.norm()));
        }
    }
    CHECK_THROWS_AS(Subspace::span(Matrix::Ones(3, 2)), ParameterError);
}

TEST_CASE("affine reduction") {
    Matrix A(1, 2);
    A << 1, 1;
    CHECK((minimal_norm_solution(A, vec({2})) - vec({1, 1})).norm() < 1e-14);
    CHECK(minimal_norm_solution(A, vec({0})).norm() == 0.0);

    const auto f = FunctionDescriptor::zero(2);
    const auto g = FunctionDescriptor::quadratic(Matrix::Identity(2, 2), Vector::Zero(2));
    const auto red0 = affine_reduction(f, g, A, vec({0}));
    CHECK(red0.shift.norm() == 0.0);
    CHECK(red0.problem.g.eval(vec({1, -1})) == g.eval(vec({1, -1})));

    Matrix inconsistent(2, 2);
    inconsistent << 1, 1, 2, 2;
    CHECK_THROWS_AS(minimal_norm_solution(inconsistent, vec({1, 3})), ParameterError);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const Matrix M = oracle::gaussian(5, 8, rng);
        const Vector b = M * oracle::gaussian(8, rng);
        const Vector xp = minimal_norm_solution(M, b);
        CHECK((M * xp - b).norm() <= 1e-9 * (1 + b.norm()));
        // minimal norm: orthogonal to the null space
        CHECK((oracle::null_projector(M) * xp).norm() <= 1e-10 * (1 + xp.norm()));
    }
}
