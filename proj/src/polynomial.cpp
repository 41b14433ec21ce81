#include "concord/polynomial.hpp"

#include <stdexcept>

namespace concord {

IntPoly IntPoly::from_rational_coeffs(const std::vector<Rational>& coeffs) {
    BigInt lcm = 1;
    for (const Rational& c : coeffs) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    std::vector<BigInt> out;
    out.reserve(coeffs.size());
    for (const Rational& c : coeffs) out.push_back(numerator(c * Rational(lcm)));
    return IntPoly(std::move(out));
}

Rational IntPoly::evaluate(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(c_[i]);
    return acc;
}

BigInt IntPoly::evaluate_int(const BigInt& x) const {
    BigInt acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * i;
    return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator-(const IntPoly& a) {
    std::vector<BigInt> r(a.c_);
    for (BigInt& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const BigInt& c : c_) g = boost::multiprecision::gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    BigInt g = content();
    std::vector<BigInt> r(c_);
    for (BigInt& x : r) x /= g;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::with_positive_leading() const {
    if (is_zero() || leading() > 0) return *this;
    return -*this;
}

IntPoly IntPoly::pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem by zero polynomial");
    IntPoly r = a;
    const BigInt d = b.leading();
    long e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const long shift = r.degree() - b.degree();
        const BigInt lead = r.leading();
        std::vector<BigInt> next(std::max(r.c_.size(), b.c_.size() + shift), BigInt(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i) next[i] = d * r.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) next[i + shift] -= lead * b.c_[i];
        r = IntPoly(std::move(next));
        --e;
    }
    // Bring the total multiplier to exactly d^(deg a - deg b + 1).
    while (e-- > 0) {
        std::vector<BigInt> next(r.c_);
        for (BigInt& x : next) x *= d;
        r = IntPoly(std::move(next));
    }
    return r;
}

IntPoly IntPoly::divide_exact(const IntPoly& b) const {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (is_zero()) return IntPoly();
    std::vector<Rational> rem(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) rem[i] = Rational(c_[i]);
    long rdeg = degree();
    const long bdeg = b.degree();
    std::vector<Rational> quot(degree() - bdeg + 1, Rational(0));
    const Rational blead{b.leading()};
    while (rdeg >= bdeg) {
        Rational q = rem[rdeg] / blead;
        quot[rdeg - bdeg] = q;
        for (long i = 0; i <= bdeg; ++i) rem[rdeg - bdeg + i] -= q * Rational(b.c_[i]);
        while (rdeg >= 0 && rem[rdeg].is_zero()) --rdeg;
    }
    if (rdeg >= 0) throw std::invalid_argument("divide_exact: not divisible");
    std::vector<BigInt> out;
    out.reserve(quot.size());
    for (const Rational& q : quot) {
        if (!is_integer(q)) throw std::invalid_argument("divide_exact: non-integer quotient");
        out.push_back(numerator(q));
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly x = a.primitive_part().with_positive_leading();
    IntPoly y = b.primitive_part().with_positive_leading();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_rem(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x.with_positive_leading();
}

IntPoly IntPoly::square_free_part() const {
    if (is_zero()) return IntPoly();
    if (degree() == 0) return IntPoly({1});
    IntPoly g = gcd(*this, derivative());
    if (g.degree() == 0) return primitive_part().with_positive_leading();
    return primitive_part().divide_exact(g).with_positive_leading();
}

IntPoly IntPoly::compose_shift(const Rational& r) const {
    // Horner over rationals: result(x) = p(x - r).
    std::vector<Rational> acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
        // acc = acc * (x - r) + c_i
        std::vector<Rational> next(acc.size() + 1, Rational(0));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k];
            next[k] -= acc[k] * r;
        }
        if (next.empty()) next.push_back(Rational(0));
        next[0] += Rational(c_[i]);
        acc = std::move(next);
    }
    return from_rational_coeffs(acc);
}

IntPoly IntPoly::scale_roots(const Rational& s) const {
    if (s.is_zero()) throw std::invalid_argument("scale_roots by zero");
    // q(x) = p(x/s) up to a constant: coefficient k gets u^(n-k) v^k for s = u/v.
    const BigInt u = numerator(s), v = denominator(s);
    const long n = degree();
    std::vector<BigInt> r(c_.size());
    BigInt upow = 1;
    std::vector<BigInt> vpow(c_.size());
    BigInt vp = 1;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        vpow[k] = vp;
        vp *= v;
    }
    for (long k = n; k >= 0; --k) {
        r[k] = c_[k] * upow * vpow[k];
        upow *= u;
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::negate_arg() const {
    std::vector<BigInt> r(c_);
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::reverse() const {
    std::vector<BigInt> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
}

Rational IntPoly::cauchy_bound() const {
    if (degree() < 1) return Rational(1);
    BigInt maxabs = 0;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
        BigInt a = boost::multiprecision::abs(c_[i]);
        if (a > maxabs) maxabs = a;
    }
    return Rational(1) + Rational(maxabs, boost::multiprecision::abs(leading()));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero() && c_.size() > 1) continue;
        if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
        else if (c_[i] < 0) s += "-";
        BigInt a = boost::multiprecision::abs(c_[i]);
        if (a != 1 || i == 0) s += a.str();
        if (i > 0) {
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

SturmChain sturm_chain(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_chain of zero polynomial");
    SturmChain chain;
    IntPoly q = p.square_free_part();
    chain.polynomials.push_back(q);
    if (q.degree() == 0) return chain;
    IntPoly d = q.derivative().primitive_part();
    chain.polynomials.push_back(d);
    IntPoly a = q, b = d;
    while (b.degree() > 0) {
        IntPoly r = IntPoly::pseudo_rem(a, b);
        if (r.is_zero()) break;  // cannot happen for square-free input
        // r = lc(b)^(delta+1) * rem(a, b) with delta = deg a - deg b; the
        // chain needs a positive multiple of -rem.
        const long mult_exp = a.degree() - b.degree() + 1;
        int sgn = b.leading() > 0 ? 1 : (mult_exp % 2 == 0 ? 1 : -1);
        IntPoly next = (sgn > 0 ? -r : r).primitive_part();
        chain.polynomials.push_back(next);
        a = std::move(b);
        b = std::move(next);
    }
    return chain;
}

int SturmChain::variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const IntPoly& p : polynomials) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

long SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
    return variations(lo) - variations(hi);
}

std::vector<Rational> char_poly(const Matrix<Rational>& m) {
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Matrix<Rational> mk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational ck = -mk.trace() / Rational(static_cast<long>(k));
        c[n - k] = ck;
        if (k == n) break;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
        mk = m * mk;
    }
    return c;
}

IntPoly char_poly_hermitian(const QMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<GaussianRational> c(n + 1);
    c[n] = GaussianRational(1);
    QMatrix mk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        GaussianRational ck = mk.trace();
        ck.re = -ck.re / Rational(static_cast<long>(k));
        ck.im = -ck.im / Rational(static_cast<long>(k));
        c[n - k] = ck;
        if (k == n) break;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
        mk = m * mk;
    }
    std::vector<BigInt> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (!c[i].im.is_zero() || !is_integer(c[i].re))
            throw std::invalid_argument("char_poly_hermitian: matrix not integer Hermitian");
        out[i] = numerator(c[i].re);
    }
    return IntPoly(std::move(out));
}

}  // namespace concord
