#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "concord/errors.hpp"

namespace concord {

// Arbitrary-precision integers and canonical rationals (gcd-reduced,
// positive denominator).  GMP keeps both invariants after every operation.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const Rational& q) { return q.sign(); }
inline int sign_of(const BigInt& z) { return z.sign(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// "p/q" with the "/q" omitted for integers; explicit leading '-' for
// negative values.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

Rational parse_rational(std::string_view text);

// A complex number with rational real and imaginary parts.  Closed under
// +, -, *, conjugation and division by nonzero elements; equality is exact
// component-wise equality.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int n) : re(n) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_gaussian_integer() const { return is_integer(re) && is_integer(im); }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

inline GaussianRational conj(const GaussianRational& a) { return a.conj(); }
inline Rational conj(const Rational& a) { return a; }

inline GaussianRational gaussian_i() { return {Rational(0), Rational(1)}; }

// Canonical form: "p/q" when the imaginary part is zero, else "p/q+r/s i"
// (or "p/q-r/s i"), all parts in lowest terms.
std::string to_string(const GaussianRational& g);

GaussianRational parse_gaussian(std::string_view text);

}  // namespace concord
