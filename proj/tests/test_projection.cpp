#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"
#include "twoproj/projection.hpp"

using Catch::Matchers::WithinAbs;
using twoproj::Matrix;

TEST_CASE("identity validates with zero residuals") {
    const auto d = twoproj::validate_projection(Matrix::identity(4));
    REQUIRE(d.pass);
    REQUIRE(d.symmetry_residual == 0.0);
    REQUIRE(d.idempotency_residual == 0.0);
}

TEST_CASE("a diagonal half fails idempotency with the exact residual") {
    const auto d = twoproj::validate_projection(Matrix{{1.0, 0.0}, {0.0, 0.5}});
    REQUIRE_FALSE(d.pass);
    REQUIRE_THAT(d.idempotency_residual, WithinAbs(0.25, 1e-15));
    REQUIRE(d.symmetry_residual == 0.0);
}

TEST_CASE("the worked rank-one projection validates") {
    REQUIRE(twoproj::validate_projection(tp_test::worked_q()).pass);
    REQUIRE_THROWS_AS(twoproj::validate_projection(Matrix(2, 3)), twoproj::ShapeError);
}

TEST_CASE("projection from the leading standard basis vectors is diagonal") {
    Matrix b(4, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const Matrix p = twoproj::projection_from_basis(b);
    REQUIRE(p == Matrix{{1.0, 0.0, 0.0, 0.0},
                        {0.0, 1.0, 0.0, 0.0},
                        {0.0, 0.0, 0.0, 0.0},
                        {0.0, 0.0, 0.0, 0.0}});
    REQUIRE_THAT(p.trace(), WithinAbs(2.0, 1e-10));
}

TEST_CASE("projection onto the pi/3 direction reproduces the worked matrix") {
    const double t = std::acos(-1.0) / 3.0;
    Matrix b(2, 1);
    b(0, 0) = std::cos(t);
    b(1, 0) = std::sin(t);
    const Matrix q = twoproj::projection_from_basis(b);
    const Matrix expected = tp_test::worked_q();
    REQUIRE((q - expected).frobenius_norm() <= 1e-14);
}

TEST_CASE("zero columns give the zero projection") {
    const Matrix p = twoproj::projection_from_basis(Matrix(3, 0));
    REQUIRE(p.rows() == 3);
    REQUIRE(p.frobenius_norm() == 0.0);
}

TEST_CASE("non-orthonormal basis is rejected") {
    REQUIRE_THROWS_AS(twoproj::projection_from_basis(Matrix{{1.0}, {1.0}}),
                      twoproj::ValidationError);
}

TEST_CASE("rank zero gives the zero matrix, full rank the identity") {
    const auto zero = twoproj::random_projection_pair(4, 0, 2, 5);
    REQUIRE(zero.p().frobenius_norm() == 0.0);

    const auto full = twoproj::random_projection_pair(4, 4, 1, 5);
    REQUIRE((full.p() - Matrix::identity(4)).frobenius_norm() <= 1e-13);
}

TEST_CASE("requested ranks show up as traces") {
    const auto pair = twoproj::random_projection_pair(8, 3, 5, 42);
    REQUIRE(twoproj::validate_projection(pair.p()).pass);
    REQUIRE(twoproj::validate_projection(pair.q()).pass);
    REQUIRE_THAT(pair.p().trace(), WithinAbs(3.0, 1e-8));
    REQUIRE_THAT(pair.q().trace(), WithinAbs(5.0, 1e-8));
}

TEST_CASE("rank out of range raises a parameter error") {
    REQUIRE_THROWS_AS(twoproj::random_projection_pair(4, 5, 1, 0), twoproj::ParameterError);
}

TEST_CASE("same seed reproduces the pair bit for bit") {
    const auto a = twoproj::random_projection_pair(6, 2, 3, 123);
    const auto b = twoproj::random_projection_pair(6, 2, 3, 123);
    REQUIRE(a.p() == b.p());
    REQUIRE(a.q() == b.q());
}

TEST_CASE("different seeds produce visibly different pairs") {
    const auto a = twoproj::random_projection_pair(6, 2, 3, 1);
    const auto b = twoproj::random_projection_pair(6, 2, 3, 2);
    REQUIRE((a.p() - b.p()).frobenius_norm() > 1e-6);
}

TEST_CASE("orthonormalized gaussian bases always validate") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 2 + seed % 7;
        const std::size_t k = 1 + seed % n;
        const Matrix g = twoproj::gaussian_matrix(n, k, 900 + seed);
        const Matrix p = twoproj::projection_from_basis(twoproj::orthonormal_columns(g));
        CHECK(twoproj::validate_projection(p).pass);
        CHECK_THAT(p.trace(), WithinAbs(static_cast<double>(k), 1e-8));
    }
}

TEST_CASE("pair construction rejects shape and validation failures") {
    REQUIRE_THROWS_AS(twoproj::ProjectionPair(Matrix::identity(2), Matrix::identity(3)),
                      twoproj::ShapeError);
    REQUIRE_THROWS_AS(
        twoproj::ProjectionPair(Matrix::identity(2), Matrix{{1.0, 0.0}, {0.0, 0.5}}),
        twoproj::ValidationError);
}
