#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concord/algebraic.hpp"
#include "concord/field_element.hpp"
#include "concord/matrix.hpp"
#include "concord/polynomial.hpp"
#include "concord/rational.hpp"
#include "concord/spectral.hpp"

using namespace concord;

TEST_CASE("rational strings round-trip in canonical form") {
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(parse_rational("7/21") == Rational(1, 3));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
}

TEST_CASE("gaussian rational strings") {
    GaussianRational g{Rational(1, 2), Rational(-3, 4)};
    CHECK(to_string(g) == "1/2-3/4 i");
    CHECK(parse_gaussian(to_string(g)) == g);
    CHECK(to_string(GaussianRational(Rational(2))) == "2");
    CHECK(parse_gaussian("0+1 i") == gaussian_i());
    GaussianRational q = GaussianRational{Rational(1), Rational(1)} * GaussianRational{Rational(1), Rational(-1)};
    CHECK(q == GaussianRational(Rational(2)));
    CHECK(gaussian_i() * gaussian_i() == GaussianRational(Rational(-1)));
}

TEST_CASE("bareiss: identity has empty null space") {
    RMatrix id = RMatrix::identity(3);
    auto r = bareiss_eliminate(id);
    CHECK(r.rank() == 3);
    CHECK(r.null_space.empty());
}

TEST_CASE("bareiss: rank-1 system") {
    RMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 1;
    m(1, 0) = 2;
    m(1, 1) = 2;
    auto r = bareiss_eliminate(m);
    CHECK(r.rank() == 1);
    REQUIRE(r.null_space.size() == 1);
    // Spanned by (1, -1) up to sign convention.
    CHECK(r.null_space[0][0] == -r.null_space[0][1]);
}

namespace {

// Naive rational Gaussian elimination, the independent oracle for the
// Bareiss null space.
std::vector<std::vector<Rational>> naive_null_space(RMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        m.swap_rows(r, p);
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_p(cols, false);
    for (auto c : pivots) is_p[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_p[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v) {
    RMatrix m(basis.size() + 1, v.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = basis[i][j];
    for (std::size_t j = 0; j < v.size(); ++j) m(basis.size(), j) = v[j];
    return integer_rank(m) == basis.size();
}

}  // namespace

TEST_CASE("bareiss vs naive elimination on random 6x4 integer matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 25; ++trial) {
        RMatrix m(6, 4);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = dist(rng);
        auto fast = bareiss_eliminate(m);
        auto slow = naive_null_space(m);
        CHECK(fast.null_space.size() == slow.size());
        for (const auto& v : fast.null_space) {
            // A * v = 0 exactly.
            for (std::size_t i = 0; i < 6; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < 4; ++j) acc += m(i, j) * v[j];
                CHECK(acc.is_zero());
            }
            CHECK(in_span(slow, v));
        }
    }
}

TEST_CASE("rational gram-schmidt") {
    using V = std::vector<GaussianRational>;
    V v1{GaussianRational(1), GaussianRational(0)};
    V v2{GaussianRational(1), GaussianRational(1)};
    auto out = rational_gram_schmidt({v1, v2});
    REQUIRE(out.size() == 2);
    CHECK(inner_product(out[0], out[1]).is_zero());
    CHECK(out[0][1].is_zero());  // (1,0) direction
    CHECK(out[1][0].is_zero());  // (0,1) direction up to scaling

    // Dependent input dropped.
    auto dep = rational_gram_schmidt({v1, v1});
    CHECK(dep.size() == 1);

    // Complex case: every output orthogonal, every output rational.
    V w1{GaussianRational(1), gaussian_i(), GaussianRational(0)};
    V w2{GaussianRational(0), GaussianRational(1), gaussian_i()};
    V w3{GaussianRational(1), GaussianRational(1), GaussianRational(1)};
    auto c = rational_gram_schmidt({w1, w2, w3});
    REQUIRE(c.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) CHECK(inner_product(c[i], c[j]).is_zero());
}

TEST_CASE("sturm chain basics") {
    IntPoly p({-1, 0, 1});  // x^2 - 1
    auto chain = sturm_chain(p);
    CHECK(chain.polynomials.size() == 3);
    // sqrt(2) in (0, 2]: one sign variation drop.
    IntPoly q({-2, 0, 1});
    auto c2 = sturm_chain(q);
    CHECK(c2.variations(Rational(0)) - c2.variations(Rational(2)) == 1);
    CHECK_THROWS_AS(sturm_chain(IntPoly()), std::invalid_argument);
}

TEST_CASE("sturm variation totals match a dense sign-change scan on random quintics") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-8, 8);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<BigInt> c(6);
        for (auto& x : c) x = dist(rng);
        c[5] = dist(rng);
        if (c[5].is_zero()) c[5] = 1;
        IntPoly p(std::move(c));
        IntPoly q = p.square_free_part();
        auto chain = sturm_chain(q);
        Rational bound = q.cauchy_bound();
        // Dense scan with interval subdivision: count sign changes of q on a
        // fine grid, subdividing until stable against the Sturm total.
        long sturm_total = chain.count_roots(-bound, bound);
        long grid = 64;
        long scan = -1;
        for (int rounds = 0; rounds < 12 && scan != sturm_total; ++rounds, grid *= 2) {
            scan = 0;
            Rational step = 2 * bound / grid;
            int last = q.sign_at(-bound);
            for (long i = 1; i <= grid; ++i) {
                Rational x = -bound + step * i;
                int s = q.sign_at(x);
                if (s == 0) {
                    ++scan;  // grid point is a root
                    last = -last;
                    continue;
                }
                if (s != last) ++scan;
                last = s;
            }
        }
        CHECK(scan == sturm_total);
    }
}

TEST_CASE("root isolation: x^2 - 1") {
    auto roots = isolate_real_roots(IntPoly({-1, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].is_rational());
    CHECK(roots[0].rational_value() == Rational(-1));
    CHECK(roots[1].rational_value() == Rational(1));
}

TEST_CASE("root isolation: golden ratio pair") {
    auto roots = isolate_real_roots(IntPoly({-1, -1, 1}));  // x^2 - x - 1
    REQUIRE(roots.size() == 2);
    CHECK(!roots[0].is_rational());
    CHECK(!roots[1].is_rational());
    // Disjoint isolating intervals.
    CHECK(roots[0].interval().hi <= roots[1].interval().lo);
    auto phi = roots[1].refined(Rational(1, 1000000));
    CHECK(phi.interval().lo < Rational(16180340, 10000000));
    CHECK(phi.interval().hi > Rational(16180339, 10000000));
}

TEST_CASE("root isolation: rational non-integer roots and multiplicities") {
    // (2x - 1)(3x + 2)^2 (x^2 - 3)
    IntPoly p = IntPoly({-1, 2}) * IntPoly({2, 3}) * IntPoly({2, 3}) * IntPoly({-3, 0, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].is_rational() == false);  // -sqrt(3)
    CHECK(roots[1].rational_value() == Rational(-2, 3));
    CHECK(roots[2].rational_value() == Rational(1, 2));
    CHECK(!roots[3].is_rational());
    CHECK(roots[3].degree() >= 2);
}

TEST_CASE("algebraic arithmetic on sqrt(2)") {
    auto roots = isolate_real_roots(IntPoly({-2, 0, 1}));
    REQUIRE(roots.size() == 2);
    const AlgebraicNumber& s2 = roots[1];  // +sqrt(2)
    CHECK(!s2.is_rational());

    auto prod = algebraic_mul(s2, s2);
    REQUIRE(prod.is_rational());
    CHECK(prod.rational_value() == Rational(2));

    auto zero = algebraic_add(s2, -s2);
    REQUIRE(zero.is_rational());
    CHECK(zero.rational_value() == Rational(0));

    CHECK(algebraic_compare(s2, AlgebraicNumber::from_rational(Rational(3, 2))) ==
          std::strong_ordering::less);
    CHECK(algebraic_compare(s2, s2) == std::strong_ordering::equal);

    auto inv = s2.inverse();
    auto one = algebraic_mul(s2, inv);
    REQUIRE(one.is_rational());
    CHECK(one.rational_value() == Rational(1));

    // sqrt(2) + sqrt(3) is a degree-4 algebraic number.
    auto r3 = isolate_real_roots(IntPoly({-3, 0, 1}));
    auto sum = algebraic_add(s2, r3[1]);
    CHECK(!sum.is_rational());
    CHECK(sum.degree() == 4);
}

TEST_CASE("refineInterval leaves rationals exact") {
    auto r = AlgebraicNumber::from_rational(Rational(2, 7));
    auto refined = r.refined(Rational(1, 1000));
    CHECK(refined.is_rational());
    CHECK(refined.rational_value() == Rational(2, 7));
    CHECK_THROWS_AS(r.refined(Rational(0)), std::invalid_argument);
}

TEST_CASE("field laws on random quadratic irrationals") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> dist(2, 40);
    auto random_quadratic = [&]() {
        for (;;) {
            int n = dist(rng);
            auto roots = isolate_real_roots(IntPoly({-n, 0, 1}));
            if (roots.size() == 2 && !roots[1].is_rational()) return roots[rng() % 2];
        }
    };
    for (int trial = 0; trial < 12; ++trial) {
        auto a = random_quadratic(), b = random_quadratic(), c = random_quadratic();
        auto lhs = algebraic_add(algebraic_add(a, b), c);
        auto rhs = algebraic_add(a, algebraic_add(b, c));
        CHECK(algebraic_eq(lhs, rhs));
        auto unit = algebraic_mul(a, a.inverse());
        REQUIRE(unit.is_rational());
        CHECK(unit.rational_value() == Rational(1));
    }
}

TEST_CASE("field elements: arithmetic and trace map modulo x^2 - 2") {
    auto roots = isolate_real_roots(IntPoly({-2, 0, 1}));
    auto ctx = std::make_shared<FieldContext>(roots[1]);
    auto x = FieldElement::generator(ctx);
    auto two = FieldElement::scalar(ctx, GaussianRational(Rational(2)));
    CHECK(x * x == two);
    // trace(c0 + c1 x) over both roots = 2 c0.
    FieldElement e(ctx, {GaussianRational(Rational(3)), GaussianRational(Rational(5))});
    CHECK(e.trace() == GaussianRational(Rational(6)));
    auto inv = x.inverse();
    CHECK(x * inv == FieldElement::scalar(ctx, GaussianRational(Rational(1))));
    CHECK_THROWS_AS(FieldElement(ctx, {}).inverse(), std::domain_error);
}

TEST_CASE("spectral split of integer Hermitian matrices") {
    // diag-like structure: eigenvalues 1 (twice) and irrational pair.
    QMatrix m(3, 3);
    m(0, 0) = GaussianRational(Rational(1));
    m(1, 1) = GaussianRational(Rational(2));
    m(1, 2) = GaussianRational(Rational(1));
    m(2, 1) = GaussianRational(Rational(1));
    m(2, 2) = GaussianRational(Rational(3));
    // char of lower 2x2 block: x^2 - 5x + 5, irrational roots.
    auto split = spectral_split(m);
    CHECK(split.rational_count() == 1);
    CHECK(split.has_irrational);
    REQUIRE(split.projectors.size() == 2);
    CHECK(split.projectors[0].trace() == GaussianRational(Rational(1)));
    CHECK(split.projectors[1].trace() == GaussianRational(Rational(2)));

    // Pauli X: rational eigenvalues +-1, projectors onto |+>, |->.
    QMatrix px(2, 2);
    px(0, 1) = GaussianRational(Rational(1));
    px(1, 0) = GaussianRational(Rational(1));
    auto sx = spectral_split(px);
    CHECK(sx.rational_count() == 2);
    CHECK(!sx.has_irrational);
    for (const auto& p : sx.projectors) CHECK(p.trace() == GaussianRational(Rational(1)));
}

TEST_CASE("block structure: commutant of a rank-1 projector on one qubit") {
    QMatrix proj(2, 2);
    proj(0, 0) = GaussianRational(Rational(1, 2));
    proj(0, 1) = GaussianRational(Rational(1, 2));
    proj(1, 0) = GaussianRational(Rational(1, 2));
    proj(1, 1) = GaussianRational(Rational(1, 2));  // |+><+|
    std::mt19937_64 rng(5);
    auto analysis = analyze_commutant({proj}, {2}, 0, rng);
    CHECK(analysis.solutions.size() == 2);  // span{I, X}
    CHECK(analysis.structure.complete);
    REQUIRE(analysis.structure.blocks.size() == 2);
    for (const auto& b : analysis.structure.blocks)
        CHECK(b.trace() == GaussianRational(Rational(1)));
}

TEST_CASE("block structure: identity constraint leaves a free qubit") {
    std::mt19937_64 rng(5);
    auto analysis = analyze_commutant({QMatrix::identity(2)}, {2}, 0, rng);
    CHECK(analysis.solutions.size() == 4);
    CHECK(analysis.structure.complete);
    REQUIRE(analysis.structure.blocks.size() == 1);
    CHECK(analysis.structure.blocks[0] == QMatrix::identity(2));
    CHECK(analysis.structure.full_freedom[0]);
}

TEST_CASE("block structure: Bell projector has no local rank-1 solutions") {
    QMatrix bell(4, 4);
    for (auto [i, j] : {std::pair{0, 0}, {0, 3}, {3, 0}, {3, 3}})
        bell(i, j) = GaussianRational(Rational(1, 2));
    for (std::size_t pos : {0u, 1u}) {
        std::mt19937_64 rng(5);
        auto analysis = analyze_commutant({bell}, {2, 2}, pos, rng);
        REQUIRE(!analysis.solutions.empty());
        CHECK(!analysis.structure.complete);  // lone rank-2 block without full freedom
    }
}

TEST_CASE("block structure: two free blocks on a two-qubit space") {
    // Constraint diag(1,1,0,0): the commutant splits into two free 2x2
    // blocks; both must be recognised as rank-1 decomposable.
    QMatrix half(4, 4);
    half(0, 0) = half(1, 1) = GaussianRational(Rational(1));
    std::mt19937_64 rng(5);
    auto analysis = analyze_commutant({half}, {4}, 0, rng);
    CHECK(analysis.structure.complete);
    REQUIRE(analysis.structure.blocks.size() == 2);
    CHECK(analysis.structure.blocks[0].trace() == GaussianRational(Rational(2)));
    CHECK(analysis.structure.full_freedom[0]);
    CHECK(analysis.structure.full_freedom[1]);
}
