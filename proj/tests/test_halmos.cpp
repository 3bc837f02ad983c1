#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/spectral_law.hpp"
#include "twoproj/synthesis.hpp"

using Catch::Matchers::WithinAbs;
using twoproj::Matrix;
using twoproj::ProjectionPair;
using twoproj::SubspaceDims;

TEST_CASE("coinciding projections live in H1 and H5 only") {
    const Matrix p{{1.0, 0.0}, {0.0, 0.0}};
    const auto form = twoproj::decompose(ProjectionPair(p, p));
    REQUIRE(form.dims == SubspaceDims{1, 0, 0, 0, 1, 0});
    REQUIRE(form.q0_eigs.empty());
}

TEST_CASE("orthogonal ranges live in H2 and H6 only") {
    const Matrix p{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix q{{0.0, 0.0}, {0.0, 1.0}};
    const auto form = twoproj::decompose(ProjectionPair(p, q));
    REQUIRE(form.dims == SubspaceDims{0, 1, 0, 0, 0, 1});
}

TEST_CASE("the worked pair is purely generic with q0 = 1/4") {
    const auto form = twoproj::decompose(tp_test::worked_pair());
    REQUIRE(form.dims == SubspaceDims{0, 0, 1, 1, 0, 0});
    REQUIRE(form.q0_eigs.size() == 1);
    CHECK_THAT(form.q0_eigs[0], WithinAbs(0.25, 1e-12));
    // The coupling between the two generic lines is a sign.
    CHECK_THAT(std::abs(form.d_unitary(0, 0)), WithinAbs(1.0, 1e-9));
}

TEST_CASE("class_tol outside (0, 1/2) is rejected") {
    REQUIRE_THROWS_AS(twoproj::decompose(tp_test::worked_pair(), 0.0),
                      twoproj::ParameterError);
    REQUIRE_THROWS_AS(twoproj::decompose(tp_test::worked_pair(), 0.5),
                      twoproj::ParameterError);
}

TEST_CASE("reassembly of trivial block data") {
    twoproj::HalmosForm form;
    form.dims = {1, 0, 0, 0, 1, 0};
    form.d_unitary = Matrix(0, 0);
    const auto [p, q] = twoproj::canonical_reassemble(form);
    REQUIRE(p == Matrix{{1.0, 0.0}, {0.0, 0.0}});
    REQUIRE(q == Matrix{{1.0, 0.0}, {0.0, 0.0}});
}

TEST_CASE("reassembly of the generic 2x2 block reproduces the worked pair") {
    twoproj::HalmosForm form;
    form.dims = {0, 0, 1, 1, 0, 0};
    form.q0_eigs = {0.25};
    form.d_unitary = Matrix::identity(1);
    const auto [p, q] = twoproj::canonical_reassemble(form);
    REQUIRE(p == tp_test::worked_p());
    REQUIRE((q - tp_test::worked_q()).frobenius_norm() <= 1e-15);
    REQUIRE(twoproj::validate_projection(p, 1e-8).pass);
    REQUIRE(twoproj::validate_projection(q, 1e-8).pass);
}

TEST_CASE("reassembly of a lone H2 dimension") {
    twoproj::HalmosForm form;
    form.dims = {0, 1, 0, 0, 0, 0};
    form.d_unitary = Matrix(0, 0);
    const auto [p, q] = twoproj::canonical_reassemble(form);
    REQUIRE(p == Matrix{{1.0}});
    REQUIRE(q == Matrix{{0.0}});
}

TEST_CASE("round trip on random pairs stays within 1e-8 n") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t n = 3 + 6 * (seed % 5);
        twoproj::SplitMix64 stream(seed);
        const std::size_t rank_p = stream.next_below(n);
        const std::size_t rank_q = stream.next_below(n);
        const auto pair = twoproj::random_projection_pair(n, rank_p, rank_q, seed * 31);
        const auto form = twoproj::decompose(pair);

        REQUIRE(form.dims.h3 == form.dims.h4);
        REQUIRE(form.dims.h1 + form.dims.h2 + form.dims.h3 == rank_p);
        REQUIRE(form.n() == n);
        for (double l : form.q0_eigs) {
            CHECK(l > form.class_tol);
            CHECK(l < 1.0 - form.class_tol);
        }

        const double nd = static_cast<double>(n);
        const Matrix& u = form.basis_u;
        CHECK((u.transpose() * u - Matrix::identity(n)).frobenius_norm() <= 1e-9 * nd);
        CHECK(twoproj::d_unitarity_residual(form) <= 1e-8);

        const auto [rp, rq] = twoproj::reconstruction_residual(form, pair);
        CHECK(std::max(rp, rq) <= 1e-8 * nd);
    }
}

TEST_CASE("identity pair reconstructs exactly") {
    const auto pair = ProjectionPair(Matrix::identity(3), Matrix::identity(3));
    const auto form = twoproj::decompose(pair);
    REQUIRE(form.dims == SubspaceDims{3, 0, 0, 0, 0, 0});
    const auto [rp, rq] = twoproj::reconstruction_residual(form, pair);
    REQUIRE(rp == 0.0);
    REQUIRE(rq == 0.0);
}

TEST_CASE("predicted pqp spectrum equals the brute-force eigenvalues") {
    for (std::uint64_t seed = 20; seed < 28; ++seed) {
        const std::size_t n = 2 + seed % 9;
        twoproj::SplitMix64 stream(seed);
        const auto pair = twoproj::random_projection_pair(n, stream.next_below(n),
                                                          stream.next_below(n), seed);
        const auto form = twoproj::decompose(pair);
        const auto predicted = twoproj::predicted_pqp_spectrum(form);
        const auto oracle = twoproj::oracle_pqp_spectrum(pair);
        REQUIRE(predicted.size() == n);
        CHECK(tp_test::max_abs_diff(predicted.values, oracle.values) <= 1e-8);
    }
}

TEST_CASE("shuffling basis columns within a block leaves the P residual alone") {
    // Two generic eigenvalues; swapping the two H3 columns without swapping
    // q0 breaks the H3/H4 pairing for Q but P cannot see the permutation.
    twoproj::SynthesisSpec spec;
    spec.q0_targets = {0.2, 0.6};
    spec.conjugate_seed = 99;
    const auto pair = twoproj::build_pair(spec);
    auto form = twoproj::decompose(pair);
    const auto [rp_before, rq_before] = twoproj::reconstruction_residual(form, pair);

    Matrix shuffled = form.basis_u;
    for (std::size_t i = 0; i < shuffled.rows(); ++i) {
        std::swap(shuffled(i, 0), shuffled(i, 1));  // the two H3 columns
    }
    form.basis_u = shuffled;
    const auto [rp_after, rq_after] = twoproj::reconstruction_residual(form, pair);

    CHECK_THAT(rp_after, WithinAbs(rp_before, 1e-12));
    CHECK(rq_after > 1e-3);
    CHECK(rq_before <= 1e-8 * 4.0);
}

TEST_CASE("dimension mismatch in the residual raises a shape error") {
    const auto form = twoproj::decompose(tp_test::worked_pair());
    const auto other = ProjectionPair(Matrix::identity(3), Matrix::identity(3));
    REQUIRE_THROWS_AS(twoproj::reconstruction_residual(form, other), twoproj::ShapeError);
}
