#include "concord/field_element.hpp"

#include <stdexcept>

namespace concord {

namespace {

using GPoly = std::vector<GaussianRational>;  // lowest degree first

void strip(GPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

long deg(const GPoly& p) { return static_cast<long>(p.size()) - 1; }

GPoly mul(const GPoly& a, const GPoly& b) {
    if (a.empty() || b.empty()) return {};
    GPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    strip(r);
    return r;
}

GPoly sub(GPoly a, const GPoly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    strip(a);
    return a;
}

// Remainder of a modulo b (b nonzero), coefficients in Q(i).
GPoly rem(GPoly a, const GPoly& b) {
    const GaussianRational lead = b.back();
    while (deg(a) >= deg(b)) {
        GaussianRational q = a.back() / lead;
        const long shift = deg(a) - deg(b);
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        strip(a);
        if (a.empty()) break;
    }
    return a;
}

GPoly monic_of(const FieldContext& ctx) {
    GPoly m(ctx.monic().size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = GaussianRational(ctx.monic()[i]);
    return m;
}

}  // namespace

FieldContext::FieldContext(AlgebraicNumber generator) : generator_(std::move(generator)) {
    const IntPoly& p = generator_.defining();
    const long n = p.degree();
    if (n < 1) throw std::invalid_argument("FieldContext: constant defining polynomial");
    monic_.resize(n + 1);
    const Rational lead{p.leading()};
    for (long i = 0; i <= n; ++i) monic_[i] = Rational(p.coeff(i)) / lead;
    // Newton's identities on x^n + a_{n-1} x^{n-1} + ... + a_0.
    power_sums_.resize(n);
    power_sums_[0] = Rational(n);
    for (long k = 1; k < n; ++k) {
        Rational acc = Rational(k) * monic_[n - k];
        for (long i = 1; i < k; ++i) acc += monic_[n - i] * power_sums_[k - i];
        power_sums_[k] = -acc;
    }
}

FieldElement::FieldElement(std::shared_ptr<const FieldContext> ctx, std::vector<GaussianRational> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    reduce();
}

FieldElement FieldElement::scalar(std::shared_ptr<const FieldContext> ctx, GaussianRational v) {
    return FieldElement(std::move(ctx), {std::move(v)});
}

FieldElement FieldElement::generator(std::shared_ptr<const FieldContext> ctx) {
    return FieldElement(std::move(ctx), {GaussianRational(0), GaussianRational(1)});
}

void FieldElement::reduce() {
    strip(c_);
    if (!ctx_ || c_.empty()) return;
    if (deg(c_) >= ctx_->degree()) c_ = rem(std::move(c_), monic_of(*ctx_));
}

FieldElement FieldElement::conj() const {
    FieldElement r = *this;
    for (auto& x : r.c_) x = x.conj();  // generator is real
    return r;
}

GaussianRational FieldElement::trace() const {
    if (!ctx_ || c_.empty()) return GaussianRational(0);
    GaussianRational acc;
    const auto& ps = ctx_->power_sums();
    for (std::size_t k = 0; k < c_.size(); ++k) acc += c_[k] * GaussianRational(ps[k]);
    return acc;
}

GaussianRational FieldElement::evaluate(const Rational& x) const {
    GaussianRational acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * GaussianRational(x) + c_[i];
    return acc;
}

FieldElement FieldElement::inverse() const {
    if (!ctx_ || c_.empty()) throw std::domain_error("inverse of zero field element");
    // Extended Euclid on (c, m) over Q(i)[x].
    GPoly r0 = monic_of(*ctx_), r1 = c_;
    GPoly s0 = {}, s1 = {GaussianRational(1)};
    while (!r1.empty() && deg(r1) > 0) {
        // r0 = q r1 + r2
        GPoly q;
        GPoly a = r0;
        const GaussianRational lead = r1.back();
        q.resize(std::max<long>(deg(a) - deg(r1) + 1, 0));
        while (deg(a) >= deg(r1)) {
            GaussianRational f = a.back() / lead;
            const long shift = deg(a) - deg(r1);
            q[shift] = f;
            for (std::size_t i = 0; i < r1.size(); ++i) a[shift + i] -= f * r1[i];
            strip(a);
            if (a.empty()) break;
        }
        strip(q);
        GPoly s2 = sub(std::move(s0), mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(a);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty())
        throw std::domain_error("field element shares a factor with the modulus");
    // r1 is a nonzero constant: gcd = 1 up to that constant.
    const GaussianRational inv_c = GaussianRational(1) / r1[0];
    for (auto& x : s1) x *= inv_c;
    return FieldElement(ctx_, std::move(s1));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    if (!ctx_) return *this = o;
    if (o.c_.empty()) return *this;
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    strip(c_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    if (!ctx_) return *this = -o;
    if (o.c_.empty()) return *this;
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    strip(c_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    if (!ctx_) return *this;          // zero stays zero
    if (o.c_.empty() && !o.ctx_) {    // multiplying by context-free zero
        c_.clear();
        return *this;
    }
    c_ = mul(c_, o.c_);
    reduce();
    return *this;
}

FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& x : r.c_) x = -x;
    return r;
}

}  // namespace concord
