#include "concord/algebraic.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace concord {

namespace {

IntPoly linear_for(const Rational& r) {
    // den*x - num, primitive with positive leading coefficient.
    return IntPoly(std::vector<BigInt>{-numerator(r), denominator(r)}).primitive_part();
}

BigInt ceil_rational(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quo = n / d;
    if (quo * d < n) ++quo;
    return quo;
}

BigInt floor_rational(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quo = n / d;
    if (quo * d > n) --quo;
    return quo;
}

Matrix<Rational> companion(const IntPoly& p) {
    const long n = p.degree();
    Matrix<Rational> c(n, n);
    const Rational lead{p.leading()};
    for (long i = 0; i + 1 < n; ++i) c(i + 1, i) = 1;
    for (long i = 0; i < n; ++i) c(i, n - 1) = -Rational(p.coeff(i)) / lead;
    return c;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& r) {
    AlgebraicNumber a;
    a.defining_ = linear_for(r);
    a.iv_ = {r - 1, r + 1};
    a.rational_ = r;
    return a;
}

AlgebraicNumber AlgebraicNumber::irrational(IntPoly defining, Rational lo, Rational hi) {
    AlgebraicNumber a;
    a.defining_ = defining.primitive_part().with_positive_leading();
    a.iv_ = {std::move(lo), std::move(hi)};
    a.sign_lo_ = a.defining_.sign_at(a.iv_.lo);
    assert(a.sign_lo_ != 0 && a.defining_.sign_at(a.iv_.hi) == -a.sign_lo_);
    return a;
}

void AlgebraicNumber::refine_once() {
    Rational mid = (iv_.lo + iv_.hi) / 2;
    int s = defining_.sign_at(mid);
    assert(s != 0);  // the unique root in the interval is irrational
    if (s == sign_lo_)
        iv_.lo = std::move(mid);
    else
        iv_.hi = std::move(mid);
}

void AlgebraicNumber::refine_below(const Rational& width) {
    while (iv_.hi - iv_.lo > width) refine_once();
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& width) const {
    if (width.sign() <= 0) throw std::invalid_argument("refineInterval: width must be positive");
    if (is_rational()) return *this;
    AlgebraicNumber a = *this;
    a.refine_below(width);
    return a;
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    if (is_rational()) return from_rational(-*rational_);
    return irrational(defining_.negate_arg(), -iv_.hi, -iv_.lo);
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_rational()) {
        if (rational_->is_zero()) throw std::domain_error("inverse of zero");
        return from_rational(Rational(1) / *rational_);
    }
    AlgebraicNumber a = *this;
    while (!(a.iv_.lo.sign() > 0 || a.iv_.hi.sign() < 0)) a.refine_once();
    return irrational(a.defining_.reverse(), Rational(1) / a.iv_.hi, Rational(1) / a.iv_.lo);
}

std::string AlgebraicNumber::to_string() const {
    std::string s = "{defining:[";
    for (long i = 0; i <= defining_.degree(); ++i) {
        if (i) s += ",";
        s += concord::to_string(defining_.coeff(i));
    }
    s += "], lo:" + concord::to_string(iv_.lo) + ", hi:" + concord::to_string(iv_.hi) + "}";
    return s;
}

namespace {

// Bisect (lo, hi), known to contain exactly one simple root of q, until the
// root is classified as the exact rational m/L (L = |lc|) or certified
// irrational with the current interval isolating.
AlgebraicNumber classify_single_root(const IntPoly& q, Rational lo, Rational hi) {
    int slo = q.sign_at(lo);
    const Rational L{boost::multiprecision::abs(q.leading())};
    while ((hi - lo) * L >= 1) {
        Rational mid = (lo + hi) / 2;
        int s = q.sign_at(mid);
        if (s == 0) return AlgebraicNumber::from_rational(mid);
        if (s == slo)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    BigInt mlow = floor_rational(lo * L) + 1;
    BigInt mhigh = ceil_rational(hi * L) - 1;
    if (mlow <= mhigh) {
        Rational cand(mlow, numerator(L));
        if (q.evaluate(cand).is_zero()) return AlgebraicNumber::from_rational(cand);
    }
    return AlgebraicNumber::irrational(q, lo, hi);
}

std::vector<AlgebraicNumber> isolate_square_free(const IntPoly& q) {
    std::vector<AlgebraicNumber> roots;
    if (q.degree() <= 0) return roots;

    const BigInt bound = ceil_rational(q.cauchy_bound());
    const SturmChain chain = sturm_chain(q);

    struct Segment {
        Rational lo, hi;
        int vlo, vhi;
    };
    std::vector<Segment> work;
    {
        Rational lo{-bound}, hi{bound};
        work.push_back({lo, hi, chain.variations(lo), chain.variations(hi)});
    }
    while (!work.empty()) {
        Segment seg = work.back();
        work.pop_back();
        const int count = seg.vlo - seg.vhi;
        if (count <= 0) continue;
        if (count == 1) {
            roots.push_back(classify_single_root(q, seg.lo, seg.hi));
            continue;
        }
        Rational mid = (seg.lo + seg.hi) / 2;
        if (q.sign_at(mid) == 0) {
            // Rational root exactly at the split point: deflate and restart.
            IntPoly deflated = q.divide_exact(linear_for(mid));
            roots = isolate_square_free(deflated);
            roots.push_back(AlgebraicNumber::from_rational(mid));
            return roots;
        }
        int vmid = chain.variations(mid);
        work.push_back({seg.lo, mid, seg.vlo, vmid});
        work.push_back({mid, seg.hi, vmid, seg.vhi});
    }
    return roots;
}

}  // namespace

std::vector<AlgebraicNumber> isolate_real_roots(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    IntPoly q = p.square_free_part();
    std::vector<AlgebraicNumber> roots;
    if (q.degree() <= 0) return roots;
    if (q.coeff(0).is_zero()) {
        roots.push_back(AlgebraicNumber::from_rational(Rational(0)));
        q = q.divide_exact(IntPoly({0, 1}));
    }
    auto rest = isolate_square_free(q);
    roots.insert(roots.end(), rest.begin(), rest.end());
    std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return algebraic_compare(a, b) == std::strong_ordering::less;
    });
    return roots;
}

namespace {

// Shared tail of add/mul: P has the target value among its roots and the
// callers can refine (x, y) to shrink the enclosing interval J.  Deflates
// rational endpoint hits, pins down a single root, then settles
// rational-vs-irrational exactly.
template <typename IntervalFn>
AlgebraicNumber pin_root(IntPoly P, AlgebraicNumber x, AlgebraicNumber y, IntervalFn make_interval) {
    P = P.square_free_part();
    SturmChain chain = sturm_chain(P);
    for (;;) {
        auto [lo, hi] = make_interval(x, y);
        if (P.sign_at(lo) == 0) {
            P = P.divide_exact(linear_for(lo)).primitive_part().with_positive_leading();
            chain = sturm_chain(P);
            continue;
        }
        if (P.sign_at(hi) == 0) {
            P = P.divide_exact(linear_for(hi)).primitive_part().with_positive_leading();
            chain = sturm_chain(P);
            continue;
        }
        const Rational L{boost::multiprecision::abs(P.leading())};
        if (chain.count_roots(lo, hi) == 1 && (hi - lo) * L < 1) {
            BigInt mlow = floor_rational(lo * L) + 1;
            BigInt mhigh = ceil_rational(hi * L) - 1;
            if (mlow <= mhigh) {
                Rational cand(mlow, numerator(L));
                if (P.evaluate(cand).is_zero()) return AlgebraicNumber::from_rational(cand);
            }
            return AlgebraicNumber::irrational(P, lo, hi);
        }
        x = x.refined((x.interval().hi - x.interval().lo) / 2);
        y = y.refined((y.interval().hi - y.interval().lo) / 2);
    }
}

}  // namespace

AlgebraicNumber algebraic_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.rational_value() + b.rational_value());
    if (a.is_rational() || b.is_rational()) {
        const AlgebraicNumber& irr = a.is_rational() ? b : a;
        const Rational& r = (a.is_rational() ? a : b).rational_value();
        return AlgebraicNumber::irrational(irr.defining().compose_shift(r),
                                           irr.interval().lo + r, irr.interval().hi + r);
    }
    Matrix<Rational> ca = companion(a.defining());
    Matrix<Rational> cb = companion(b.defining());
    Matrix<Rational> m = kron(ca, Matrix<Rational>::identity(cb.rows())) +
                         kron(Matrix<Rational>::identity(ca.rows()), cb);
    IntPoly P = IntPoly::from_rational_coeffs(char_poly(m));
    return pin_root(std::move(P), a, b, [](const AlgebraicNumber& x, const AlgebraicNumber& y) {
        return std::pair<Rational, Rational>(x.interval().lo + y.interval().lo,
                                             x.interval().hi + y.interval().hi);
    });
}

AlgebraicNumber algebraic_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.rational_value() * b.rational_value());
    if (a.is_rational() || b.is_rational()) {
        const AlgebraicNumber& irr = a.is_rational() ? b : a;
        const Rational& r = (a.is_rational() ? a : b).rational_value();
        if (r.is_zero()) return AlgebraicNumber::from_rational(Rational(0));
        Rational lo = irr.interval().lo * r, hi = irr.interval().hi * r;
        if (r.sign() < 0) std::swap(lo, hi);
        return AlgebraicNumber::irrational(irr.defining().scale_roots(r), lo, hi);
    }
    AlgebraicNumber x = a, y = b;
    // Sign-definite intervals keep the endpoint products monotone.
    while (!(x.interval().lo.sign() > 0 || x.interval().hi.sign() < 0))
        x = x.refined((x.interval().hi - x.interval().lo) / 2);
    while (!(y.interval().lo.sign() > 0 || y.interval().hi.sign() < 0))
        y = y.refined((y.interval().hi - y.interval().lo) / 2);
    Matrix<Rational> m = kron(companion(x.defining()), companion(y.defining()));
    IntPoly P = IntPoly::from_rational_coeffs(char_poly(m));
    return pin_root(std::move(P), x, y, [](const AlgebraicNumber& u, const AlgebraicNumber& v) {
        const Rational p1 = u.interval().lo * v.interval().lo;
        const Rational p2 = u.interval().lo * v.interval().hi;
        const Rational p3 = u.interval().hi * v.interval().lo;
        const Rational p4 = u.interval().hi * v.interval().hi;
        Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
        Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
        return std::pair<Rational, Rational>(std::move(lo), std::move(hi));
    });
}

std::strong_ordering algebraic_compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational()) {
        const Rational &x = a.rational_value(), &y = b.rational_value();
        if (x < y) return std::strong_ordering::less;
        if (x > y) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    if (a.is_rational() || b.is_rational()) {
        const bool a_rat = a.is_rational();
        const Rational& r = (a_rat ? a : b).rational_value();
        AlgebraicNumber irr = a_rat ? b : a;
        for (;;) {
            if (r <= irr.interval().lo)
                return a_rat ? std::strong_ordering::less : std::strong_ordering::greater;
            if (r >= irr.interval().hi)
                return a_rat ? std::strong_ordering::greater : std::strong_ordering::less;
            irr.refine_once();
        }
    }
    AlgebraicNumber x = a, y = b;
    IntPoly g = IntPoly::gcd(x.defining(), y.defining());
    std::optional<SturmChain> gchain;
    if (g.degree() >= 1) gchain = sturm_chain(g);
    for (;;) {
        if (x.interval().hi <= y.interval().lo) return std::strong_ordering::less;
        if (y.interval().hi <= x.interval().lo) return std::strong_ordering::greater;
        if (gchain) {
            Rational lo = std::max(x.interval().lo, y.interval().lo);
            Rational hi = std::min(x.interval().hi, y.interval().hi);
            if (lo < hi && gchain->count_roots(lo, hi) == 1) return std::strong_ordering::equal;
        }
        x.refine_once();
        y.refine_once();
    }
}

}  // namespace concord
