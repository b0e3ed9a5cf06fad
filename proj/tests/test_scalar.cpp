#include <doctest.h>

#include "core/scalar.hpp"

using namespace lefvar;

TEST_CASE("gaussian rational field values")
{
    Scalar one_plus_i(Rational(1), Rational(1));
    Scalar one_minus_i(Rational(1), Rational(-1));
    CHECK(one_plus_i * one_minus_i == Scalar(2));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar(rational(3, 2)) / Scalar(rational(1, 2)) == Scalar(3));
    CHECK(Scalar(rational(3, 2)).str() == "3/2");
}

TEST_CASE("division by zero is rejected")
{
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
    try {
        (void)Scalar::zero().inv();
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::division_by_zero);
    }
}

TEST_CASE("field laws on sampled values")
{
    std::vector<Scalar> values;
    for (long a = -2; a <= 2; ++a)
        for (long b = -1; b <= 1; ++b)
            values.emplace_back(rational(a, 3), rational(b, 2));
    for (const auto& x : values) {
        for (const auto& y : values) {
            CHECK(x * y == y * x);
            CHECK(x + y == y + x);
            for (const auto& z : values)
                CHECK(x * (y + z) == x * y + x * z);
            if (!y.is_zero())
                CHECK((x / y) * y == x);
        }
        CHECK(x.conj().conj() == x);
        CHECK((x * x.conj()).is_real());
    }
}

TEST_CASE("dual numbers truncate at first order")
{
    Dual one_plus(Scalar(1), Scalar(1));
    Dual one_minus(Scalar(1), Scalar(-1));
    CHECK(one_plus * one_minus == Dual::one());
    CHECK(Dual::eps() * Dual::eps() == Dual::zero());

    Dual x(Scalar(2), Scalar(3));
    CHECK(x.inv() == Dual(Scalar(rational(1, 2)), Scalar(rational(-3, 4))));
    CHECK(x * x.inv() == Dual::one());

    try {
        (void)Dual(Scalar(0), Scalar(5)).inv();
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_invertible);
    }
}

TEST_CASE("powers of i and factorials")
{
    CHECK(i_pow(0) == Scalar(1));
    CHECK(i_pow(1) == Scalar::i());
    CHECK(i_pow(2) == Scalar(-1));
    CHECK(i_pow(-1) == -Scalar::i());
    CHECK(i_pow(7) == i_pow(3));
    CHECK(factorial(0) == Rational(1));
    CHECK(factorial(10) == Rational(3628800));
    CHECK(factorial(11) / factorial(10) == Rational(11));
}
