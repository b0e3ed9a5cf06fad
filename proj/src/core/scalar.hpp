#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "core/error.hpp"

namespace lefvar {

using Rational = mpq_class;

inline Rational rational(long num, long den = 1)
{
    require(den != 0, Errc::division_by_zero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Exact factorial as a rational (arguments up to (2N)! stay desk-scale).
inline Rational factorial(int k)
{
    require(k >= 0, Errc::invariant_violation, "factorial of negative integer");
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return Rational(f);
}

/// Gaussian rational re + im*i. The coefficient field for everything:
/// exact, no rounding anywhere.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(int v) : re_(v), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}
    Scalar(Rational re) : re_(std::move(re)), im_(0) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b)
    {
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inv() const
    {
        require(!is_zero(), Errc::division_by_zero, "inverse of zero");
        Rational n = re_ * re_ + im_ * im_;
        return Scalar(re_ / n, -im_ / n);
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Renders in the expression grammar ("3/2", "-i", "(1+2*i)", ...).
    std::string str() const
    {
        auto q = [](const Rational& r) { return r.get_str(); };
        if (im_ == 0)
            return q(re_);
        std::string im_part = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : q(im_) + "*i";
        if (re_ == 0)
            return im_part;
        std::string s = "(" + q(re_);
        if (im_part[0] == '-')
            s += "-" + im_part.substr(1);
        else
            s += "+" + im_part;
        return s + ")";
    }

private:
    Rational re_, im_;
};

/// i^k for any integer k.
inline Scalar i_pow(int k)
{
    int m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

inline Scalar sign_scalar(long exponent)
{
    return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1);
}

/// Dual number body + eps*slope with eps^2 = 0; first-order deformation
/// bookkeeping over the Gaussian rationals.
class Dual {
public:
    Dual() = default;
    Dual(int v) : body_(v) {}
    Dual(Scalar body) : body_(std::move(body)) {}
    Dual(Scalar body, Scalar slope) : body_(std::move(body)), slope_(std::move(slope)) {}

    static Dual zero() { return Dual(); }
    static Dual one() { return Dual(Scalar(1)); }
    static Dual eps() { return Dual(Scalar(0), Scalar(1)); }

    const Scalar& body() const { return body_; }
    const Scalar& slope() const { return slope_; }

    bool is_zero() const { return body_.is_zero() && slope_.is_zero(); }

    Dual conj() const { return Dual(body_.conj(), slope_.conj()); }

    Dual operator-() const { return Dual(-body_, -slope_); }

    friend Dual operator+(const Dual& a, const Dual& b)
    {
        return Dual(a.body_ + b.body_, a.slope_ + b.slope_);
    }
    friend Dual operator-(const Dual& a, const Dual& b)
    {
        return Dual(a.body_ - b.body_, a.slope_ - b.slope_);
    }
    friend Dual operator*(const Dual& a, const Dual& b)
    {
        return Dual(a.body_ * b.body_, a.body_ * b.slope_ + a.slope_ * b.body_);
    }
    friend Dual operator/(const Dual& a, const Dual& b) { return a * b.inv(); }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }

    /// Invertible iff the body is nonzero: (a+eps*b)^-1 = a^-1 - eps*a^-2*b.
    Dual inv() const
    {
        require(!body_.is_zero(), Errc::not_invertible, "dual number with zero body");
        Scalar bi = body_.inv();
        return Dual(bi, -(bi * bi * slope_));
    }

    friend bool operator==(const Dual& a, const Dual& b)
    {
        return a.body_ == b.body_ && a.slope_ == b.slope_;
    }
    friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

    std::string str() const { return body_.str() + " + eps*" + slope_.str(); }

private:
    Scalar body_, slope_;
};

template <class R>
inline constexpr bool is_dual_v = false;
template <>
inline constexpr bool is_dual_v<Dual> = true;

} // namespace lefvar
