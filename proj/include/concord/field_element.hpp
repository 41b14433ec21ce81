#pragma once

#include <memory>
#include <vector>

#include "concord/algebraic.hpp"
#include "concord/rational.hpp"

namespace concord {

// Shared description of the extension Q(i)(lambda): the generator with its
// defining polynomial (square-free, all roots real in our setting) and the
// Newton power sums of the defining polynomial's roots, for the trace map.
class FieldContext {
  public:
    explicit FieldContext(AlgebraicNumber generator);

    const AlgebraicNumber& generator() const { return generator_; }
    long degree() const { return static_cast<long>(monic_.size()) - 1; }
    // Monic defining polynomial over Q, lowest degree first.
    const std::vector<Rational>& monic() const { return monic_; }
    // Power sums p_k = sum over all roots of lambda^k, k = 0..degree-1.
    const std::vector<Rational>& power_sums() const { return power_sums_; }

  private:
    AlgebraicNumber generator_;
    std::vector<Rational> monic_;
    std::vector<Rational> power_sums_;
};

// An element of Q(i)(lambda), stored as a Gaussian-rational polynomial in
// lambda reduced modulo the generator's defining polynomial.  The
// default-constructed element is a context-free zero, so Matrix<FieldElement>
// works out of the box.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const FieldContext> ctx, std::vector<GaussianRational> coeffs);

    static FieldElement scalar(std::shared_ptr<const FieldContext> ctx, GaussianRational v);
    static FieldElement generator(std::shared_ptr<const FieldContext> ctx);

    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    const std::shared_ptr<const FieldContext>& context() const { return ctx_; }

    FieldElement conj() const;

    // Sum of the represented polynomial over all roots of the defining
    // polynomial; rational by symmetry.
    GaussianRational trace() const;

    // Value when the generator is specialised to a rational point (test
    // support for rational roots of the same polynomial family).
    GaussianRational evaluate(const Rational& x) const;

    // Multiplicative inverse via the extended Euclidean algorithm; throws
    // std::domain_error when the element is not coprime to the modulus.
    FieldElement inverse() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator-(const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  private:
    void reduce();

    std::shared_ptr<const FieldContext> ctx_;
    std::vector<GaussianRational> c_;  // degree < ctx_->degree(), no high zeros
};

inline FieldElement conj(const FieldElement& a) { return a.conj(); }

}  // namespace concord
