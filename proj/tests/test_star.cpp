#include <doctest.h>

#include "core/star.hpp"
#include "core/suites.hpp"

using namespace lefvar;

namespace {

StarContext<Scalar> standard_ctx(int N)
{
    return StarContext<Scalar>(build_model(standard_omega(N), N));
}

} // namespace

TEST_CASE("star on primitive pieces")
{
    for (int N : {2, 3}) {
        auto ctx = standard_ctx(N);
        auto one = Form<Scalar>::unit(N);
        auto w = ctx.model().omega();
        CHECK(star_primitive(one, 0, ctx)
              == Scalar(Rational(1) / factorial(N)) * w.wedge_pow(N));
        CHECK(star_primitive(one, N, ctx) == Scalar(factorial(N)) * one);
        // above the top power the value is zero
        CHECK(star_primitive(one, N + 1, ctx).is_zero());
    }
    auto ctx = standard_ctx(2);
    for (const auto& alpha : primitive_basis_bidegree(ctx.model(), 1, 1))
        CHECK(star_primitive(alpha, 0, ctx) == -alpha);

    try {
        star_primitive(ctx.model().omega(), 1, ctx);
        FAIL("expected NotPrimitive");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_primitive);
    }
    try {
        star_primitive(Form<Scalar>::dz(2, 1) + h_unit(2, 1), 0, ctx);
        FAIL("expected NotPureType");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_pure_type);
    }
}

TEST_CASE("star involution, bidegree map and reality, exhaustive N = 2")
{
    int N = 2;
    auto ctx = standard_ctx(N);
    for (const Mono& m : all_monomials(N)) {
        auto x = Form<Scalar>::monomial(N, m);
        auto sx = hodge_star(x, ctx);
        for (const auto& [mm, c] : sx.terms()) {
            CHECK(mm.p() == N - m.q());
            CHECK(mm.q() == N - m.p());
        }
        CHECK(hodge_star(sx, ctx) == ((m.degree() % 2 == 0) ? x : -x));
        CHECK(hodge_star(x.conjugated(), ctx) == sx.conjugated());
    }
    CHECK(hodge_star(ctx.model().omega(), ctx)
          == Scalar(Rational(1) / factorial(N - 1)) * ctx.model().omega().wedge_pow(N - 1));
}

TEST_CASE("star variation equals the deformed-star derivative, exhaustive N = 2")
{
    int N = 2;
    auto ctx = standard_ctx(N);
    for (const auto& v : real_11_basis(N)) {
        auto dctx = deform_star(ctx, v);
        for (const Mono& m : all_monomials(N)) {
            auto x = Form<Scalar>::monomial(N, m);
            auto ds = hodge_star(embed(x), dctx);
            CHECK(body_part(ds) == hodge_star(x, ctx));
            CHECK(slope_part(ds) == star_variation(x, v, ctx));
        }
    }
    // v = 0 keeps the star unchanged.
    for (const Mono& m : all_monomials(N)) {
        auto x = Form<Scalar>::monomial(N, m);
        CHECK(star_variation(x, Form<Scalar>(N), ctx).is_zero());
        CHECK(body_part(deformed_star(x, Form<Scalar>(N), ctx)) == hodge_star(x, ctx));
        CHECK(slope_part(deformed_star(x, Form<Scalar>(N), ctx)).is_zero());
    }
}

TEST_CASE("variation of the star on omega powers")
{
    int N = 3;
    auto ctx = standard_ctx(N);
    auto w = ctx.model().omega();
    for (const auto& v :
         {h_unit(N, 1) - h_unit(N, 2), h_unit(N, 2) - h_unit(N, 3)}) {
        REQUIRE(ctx.model().is_primitive(v));
        for (int j = 0; j <= N - 1; ++j) {
            CHECK(star_variation(w.wedge_pow(j), v, ctx)
                  == Scalar(Rational(2) * factorial(j) / factorial(N - j - 1))
                      * v.wedge(w.wedge_pow(N - j - 1)));
        }
        // deformed star of omega: w_eps^{N-1}/(N-1)! + eps w_eps^{N-2} v/(N-2)!
        auto ds = deformed_star(w, v, ctx);
        Form<Dual> w_eps = dual_form(w, v);
        Form<Dual> expected = Dual(Scalar(Rational(1) / factorial(N - 1)))
            * w_eps.wedge_pow(N - 1);
        expected = expected
            + Dual(Scalar(0), Scalar(Rational(1) / factorial(N - 2)))
                * w_eps.wedge_pow(N - 2).wedge(embed(v));
        CHECK(ds == expected);
    }
}

TEST_CASE("variation closed form at the boundary degree")
{
    // N = 3, alpha = v = i(dz1 dzb1 - dz2 dzb2), j = 1: the slot-2 term
    // survives even though N - n + j = 0.
    int N = 3;
    auto ctx = standard_ctx(N);
    auto alpha = h_unit(N, 1) - h_unit(N, 2);
    auto t = wedge_primitive_triple(ctx.model(), alpha, alpha);
    CHECK(t.slot2 == Scalar(rational(-1, 3)) * Form<Scalar>::unit(N));
    auto lhs = star_variation_closed(alpha, 1, alpha, ctx);
    CHECK(lhs == t.slot1 - Scalar(rational(4, 3)) * ctx.model().omega());
    CHECK(lhs == slope_part(deformed_star(alpha.wedge(ctx.model().omega()), alpha, ctx)));
}

TEST_CASE("trace-direction consistency")
{
    int N = 2;
    auto ctx = standard_ctx(N);
    const auto& model = ctx.model();
    for (const Scalar& c : {Scalar(2), Scalar(rational(-1, 3))}) {
        for (const Mono& m : all_monomials(N)) {
            auto x = Form<Scalar>::monomial(N, m);
            Form<Scalar> expect(N);
            for (const auto& [p, q] : x.bidegrees()) {
                for (const auto& part : model.primitive_decompose(x.bidegree_component(p, q))) {
                    int n0 = p + q - 2 * part.power;
                    expect = expect
                        + (c * Scalar(N - n0 - 2 * part.power))
                            * star_primitive(part.primitive, part.power, ctx);
                }
            }
            CHECK(star_variation(x, c * model.omega(), ctx) == expect);
        }
    }
}

TEST_CASE("variation term coefficients")
{
    // eta and the c-coefficients satisfy their defining relations.
    for (int N : {2, 3}) {
        for (int a = 0; a <= 1; ++a) {
            for (int b = 0; b <= 1; ++b) {
                for (int j = 0; j <= 1; ++j) {
                    int n = a + b + 2 * j;
                    if (N - n + j < 0)
                        continue;
                    auto t = star_variation_terms(a, b, j, N);
                    CHECK(t.c0 == -(Scalar(N - n + j) * t.eta));
                    CHECK(t.c1 == Scalar(j) * t.eta);
                    CHECK(t.c2 == Scalar(N - n + 3 * j + 2) * t.eta);
                    CHECK(t.c0_prime == ((j > 0) ? t.c0 : Scalar(0)));
                    Scalar expected_eta = sign_scalar(long(a + b - 2) * (a + b - 1) / 2)
                        * i_pow(a - b) * Scalar(factorial(j) / factorial(N - n + j));
                    CHECK(t.eta == expected_eta);
                }
            }
        }
    }
}
