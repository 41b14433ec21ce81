#pragma once

#include <string>
#include <vector>

#include "concord/matrix.hpp"
#include "concord/rational.hpp"

namespace concord {

// Univariate polynomial with arbitrary-precision integer coefficients,
// stored lowest degree first.  The zero polynomial has no coefficients.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly from_rational_coeffs(const std::vector<Rational>& coeffs);

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const BigInt& coeff(std::size_t i) const { return c_[i]; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Rational evaluate(const Rational& x) const;
    BigInt evaluate_int(const BigInt& x) const;
    int sign_at(const Rational& x) const { return evaluate(x).sign(); }

    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    BigInt content() const;  // positive gcd of coefficients; 0 for the zero polynomial
    IntPoly primitive_part() const;  // sign preserved
    IntPoly with_positive_leading() const;

    // Pseudo-remainder r with lc(b)^(deg a - deg b + 1) * a = q * b + r.
    static IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);

    // Exact division; throws std::invalid_argument if b does not divide a.
    IntPoly divide_exact(const IntPoly& b) const;

    // Primitive gcd with positive leading coefficient (content dropped).
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    // p / gcd(p, p'): same distinct roots, all simple.  Primitive, positive
    // leading coefficient.
    IntPoly square_free_part() const;

    IntPoly compose_shift(const Rational& r) const;  // roots move by +r
    IntPoly scale_roots(const Rational& s) const;    // roots multiply by s (s != 0)
    IntPoly negate_arg() const;                      // p(-x)
    IntPoly reverse() const;                         // x^deg * p(1/x)

    // 1 + max_i |a_i| / |a_n|: every real root lies strictly inside.
    Rational cauchy_bound() const;

    std::string to_string() const;

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

// A signed polynomial remainder sequence for the square-free part of the
// input: each member is a positive multiple of minus the remainder of the
// two preceding ones, so Sturm's theorem applies directly.
struct SturmChain {
    std::vector<IntPoly> polynomials;

    int variations(const Rational& x) const;
    // Number of distinct real roots in (lo, hi); requires non-root endpoints.
    long count_roots(const Rational& lo, const Rational& hi) const;
};

SturmChain sturm_chain(const IntPoly& p);

// Monic characteristic polynomial of a square rational matrix
// (Faddeev-LeVerrier, exact).
std::vector<Rational> char_poly(const Matrix<Rational>& m);

// Characteristic polynomial of an integer Hermitian matrix; the result is
// monic with integer coefficients.
IntPoly char_poly_hermitian(const QMatrix& m);

}  // namespace concord
