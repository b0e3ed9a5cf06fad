#include <doctest.h>

#include "core/cones.hpp"

using namespace lefvar;

namespace {

TorusContext standard_torus(int N)
{
    return TorusContext(StarContext<Scalar>(build_model(standard_omega(N), N)),
                        ModeSet::box(N, 1));
}

} // namespace

TEST_CASE("tangent identity and tangency")
{
    int N = 2;
    auto ctx = standard_torus(N);
    auto omega_c = FourierForm<Scalar>::constant(standard_omega(N));
    for (int i = 0; i <= N - 1; ++i) {
        auto tc = tangent_identity_check(omega_c, i, ctx);
        CHECK(tc.identity_exact);
        CHECK(tc.tangent_condition);
        CHECK(tc.v_harmonic);

        tc = tangent_identity_check(FourierForm<Scalar>::constant(h_unit(N, 1)), i, ctx);
        CHECK(tc.identity_exact);
        CHECK(tc.v_harmonic);

        auto moving = closed_11_mode_forms(ctx, {1, 0, 0, 0}).front();
        tc = tangent_identity_check(moving, i, ctx);
        CHECK(tc.identity_exact);
        CHECK(!tc.v_harmonic);
        CHECK(!tc.tangent_condition);
    }
    CHECK_THROWS_AS(tangent_identity_check(omega_c, N, ctx), Error);
}

TEST_CASE("cone linearity reports on the flat model")
{
    int N = 2;
    auto ctx = standard_torus(N);
    auto basis = harmonic_11_basis(ctx);
    REQUIRE(int(basis.size()) == N * N);

    for (int i = 0; i <= N - 1; ++i) {
        auto report = ki_linear_criterion(i, basis, ctx);
        CHECK(report.criterion_holds);
        CHECK(report.i == i);
        std::size_t expected = 1;
        // multisets of size N-i from N^2 elements
        int n = N * N, k = N - i;
        long count = 1;
        for (int t = 1; t <= k; ++t)
            count = count * (n + t - 1) / t;
        expected = std::size_t(count);
        CHECK(report.witnesses.size() == expected);
        for (const auto& w : report.witnesses)
            CHECK(w.harmonic);
    }

    auto suite = cone_equivalence_suite(basis, ctx);
    CHECK(suite.monotone);
    CHECK(suite.top_power_criterion);
    CHECK(suite.square_criterion);
    CHECK(suite.last_criterion);
    CHECK(suite.reports.size() == std::size_t(N));
}

TEST_CASE("bad bases are rejected")
{
    int N = 2;
    auto ctx = standard_torus(N);
    auto basis = harmonic_11_basis(ctx);

    auto broken = basis;
    broken.push_back(closed_11_mode_forms(ctx, {1, 0, 0, 0}).front()); // not harmonic
    try {
        ki_linear_criterion(0, broken, ctx);
        FAIL("expected BadBasis");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_basis);
    }

    auto thin = basis;
    thin.pop_back(); // no longer spans
    try {
        ki_linear_criterion(0, thin, ctx);
        FAIL("expected BadBasis");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_basis);
    }

    auto complex_entry = basis;
    complex_entry[0] = FourierForm<Scalar>::constant(
        Scalar::i() * (h_unit(N, 1) - h_unit(N, 2)));
    CHECK_THROWS_AS(ki_linear_criterion(0, complex_entry, ctx), Error);
}
