#include <doctest.h>

#include "core/descriptor.hpp"
#include "core/expr.hpp"
#include "core/suites.hpp"

using namespace lefvar;

namespace {

FourierForm<Scalar> eval(const std::string& src, int N)
{
    return elaborate(parse_form(src, N), standard_omega(N), ModeSet::box(N, 1));
}

} // namespace

TEST_CASE("parse and evaluate basic expressions")
{
    CHECK(as_constant(eval("i*(dz1^dzb1 + dz2^dzb2)", 2)) == standard_omega(2));
    CHECK(eval("dz1^dz1", 2).is_zero());
    CHECK(as_constant(eval("w", 2)) == standard_omega(2));
    CHECK(as_constant(eval("3/2", 2)) == Scalar(rational(3, 2)) * Form<Scalar>::unit(2));
    CHECK(as_constant(eval("-dz1^dzb2 + dzb2^dz1", 2))
          == Scalar(-2) * Form<Scalar>::dz(2, 1).wedge(Form<Scalar>::dzb(2, 2)));
    CHECK(eval("e[1,0,0,0]", 2)
          == FourierForm<Scalar>::mode({1, 0, 0, 0}, Form<Scalar>::unit(2)));
    CHECK(as_constant(eval("2*3/2*i^i", 2)) == Scalar(-3) * Form<Scalar>::unit(2));
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_form("dz3", 2);
        FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::index_out_of_range);
        CHECK(e.line() == 1);
        CHECK(e.column() == 1);
    }
    try {
        parse_form("dz1 +\n+ dz2", 2);
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::syntax_error);
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
    CHECK_THROWS_AS(parse_form("e[1,0]", 2), Error);       // arity
    CHECK_THROWS_AS(parse_form("q1", 2), Error);           // unknown symbol
    CHECK_THROWS_AS(parse_form("1/0", 2), Error);          // zero denominator
    CHECK_THROWS_AS(parse_form("(dz1", 2), Error);         // unbalanced
    try {
        (void)eval("dz1*dz2", 2);
        FAIL("expected scalar-operand error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::syntax_error);
    }
}

TEST_CASE("print/parse round trips")
{
    for (const char* src :
         {"i*(dz1^dzb1 + dz2^dzb2)", "3/2*dz1^dz2 - w^w", "-(dz1 + dzb1)^dz2",
          "e[1,0,-1,0]*dz1 + 2*e[0,1,0,0]", "1/2 - i*w"}) {
        FormExpr e = parse_form(src, 2);
        FormExpr again = parse_form(print_expr(e), 2);
        CHECK(again == e);
    }
}

TEST_CASE("printed values parse back to the same value")
{
    int N = 2;
    SplitMix64 rng(29);
    ModeSet modes = ModeSet::box(N, 1);
    for (int t = 0; t < 12; ++t) {
        FourierForm<Scalar> x(N);
        std::vector<ModeKey> keys(modes.keys().begin(), modes.keys().end());
        auto monos = all_monomials(N);
        for (int parts = 0; parts < 3; ++parts) {
            x = x + FourierForm<Scalar>::mode(
                keys[std::size_t(rng.next() % keys.size())],
                Form<Scalar>::monomial(N, monos[std::size_t(rng.next() % monos.size())],
                                       random_scalar(rng)));
        }
        std::string printed = print_fourier(x);
        CHECK(elaborate(parse_form(printed, N), standard_omega(N), modes) == x);
    }
    CHECK(print_form(Form<Scalar>(2)) == "0");
}

TEST_CASE("descriptors validate strictly")
{
    CHECK_THROWS_AS(parse_descriptor("not json"), Error);
    CHECK_THROWS_AS(parse_descriptor(R"({"n": 0})"), Error);
    CHECK_THROWS_AS(parse_descriptor(R"({"n": 2, "mystery": 1})"), Error);
    CHECK_THROWS_AS(parse_descriptor(R"({"n": 2, "suite": "nope"})"), Error);
    CHECK_THROWS_AS(
        parse_descriptor(R"({"n": 2, "modes": [[0,0,0,0]], "mode_radius": 1})"), Error);
    CHECK_THROWS_AS(parse_descriptor(R"({"n": 2, "seed": -4})"), Error);

    auto desc = parse_descriptor(
        R"({"n": 2, "mode_radius": 1, "suite": "sl2", "seed": "12345678901234567"})");
    CHECK(desc.seed == 12345678901234567ULL);
    CHECK(desc.n == 2);

    try {
        elaborate_descriptor(parse_descriptor(R"({"n": 2, "omega": "dz1^dz2"})"));
        FAIL("expected BadDescriptor");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_descriptor);
    }
    try {
        elaborate_descriptor(parse_descriptor(R"({"n": 2, "omega": "i*dz1^dzb1"})"));
        FAIL("expected NotLefschetz");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_lefschetz);
    }
}

TEST_CASE("descriptor elaboration binds expressions")
{
    auto ws = elaborate_descriptor(parse_descriptor(R"JSON({
        "n": 2,
        "mode_radius": 1,
        "bindings": {"v": "i*dz1^dzb1*(e[1,0,0,0] + e[-1,0,0,0])", "alpha": "w"}
    })JSON"));
    CHECK(ws.dim() == 2);
    CHECK(ws.bindings.count("v") == 1);
    CHECK(as_constant(ws.bindings.at("alpha")) == standard_omega(2));
    CHECK(ws.bindings.at("v").is_real());
}
