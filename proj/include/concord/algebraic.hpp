#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "concord/polynomial.hpp"
#include "concord/rational.hpp"

namespace concord {

struct IsolatingInterval {
    Rational lo, hi;
};

// A real algebraic number: an integer polynomial with exactly one real root
// in the stored interval.  Rational numbers carry their exact value and a
// linear defining polynomial; irrational numbers keep non-root interval
// endpoints so refinement is plain sign bisection.
class AlgebraicNumber {
  public:
    static AlgebraicNumber from_rational(const Rational& r);
    // Internal constructor for an isolated irrational root.
    static AlgebraicNumber irrational(IntPoly defining, Rational lo, Rational hi);

    const IntPoly& defining() const { return defining_; }
    const IsolatingInterval& interval() const { return iv_; }
    bool is_rational() const { return rational_.has_value(); }
    const Rational& rational_value() const { return *rational_; }
    long degree() const { return defining_.degree(); }

    // Same root, interval width <= width.  Rational numbers are exact
    // already and returned unchanged.
    AlgebraicNumber refined(const Rational& width) const;

    AlgebraicNumber operator-() const;
    AlgebraicNumber inverse() const;  // requires nonzero

    std::string to_string() const;  // {defining coefficients, interval lo/hi}

    friend AlgebraicNumber algebraic_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber algebraic_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend std::strong_ordering algebraic_compare(const AlgebraicNumber& a, const AlgebraicNumber& b);

  private:
    void refine_once();
    void refine_below(const Rational& width);

    IntPoly defining_;
    IsolatingInterval iv_;
    std::optional<Rational> rational_;
    int sign_lo_ = 0;
};

inline AlgebraicNumber algebraic_sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return algebraic_add(a, -b);
}
inline AlgebraicNumber algebraic_div(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return algebraic_mul(a, b.inverse());
}
inline bool algebraic_eq(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return algebraic_compare(a, b) == std::strong_ordering::equal;
}

// Every distinct real root of p, ascending.  Rational roots carry their
// exact value (complete detection: a root is rational iff lc(p) times the
// root is an integer, which bisection decides in finitely many steps).
std::vector<AlgebraicNumber> isolate_real_roots(const IntPoly& p);

}  // namespace concord
