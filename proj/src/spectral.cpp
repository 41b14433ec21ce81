#include "concord/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace concord {

namespace {

void check_projector(const QMatrix& p) {
    if (!is_hermitian(p) || p * p != p)
        throw std::logic_error("spectral_split produced a non-projector");
}

IntPoly monic_linear(const Rational& r) {
    // Rational eigenvalues of monic integer polynomials are integers.
    if (!is_integer(r)) throw std::logic_error("non-integer rational eigenvalue of monic charpoly");
    return IntPoly(std::vector<BigInt>{-numerator(r), BigInt(1)});
}

}  // namespace

std::vector<QMatrix> hermitian_basis(std::size_t dim) {
    std::vector<QMatrix> basis;
    basis.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        QMatrix e(dim, dim);
        e(i, i) = GaussianRational(1);
        basis.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            QMatrix e(dim, dim);
            e(i, j) = GaussianRational(1);
            e(j, i) = GaussianRational(1);
            basis.push_back(std::move(e));
        }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            QMatrix e(dim, dim);
            e(i, j) = gaussian_i();
            e(j, i) = -gaussian_i();
            basis.push_back(std::move(e));
        }
    return basis;
}

SpectralSplit spectral_split(const QMatrix& m) {
    const std::size_t d = m.rows();
    SpectralSplit split;

    const IntPoly chi_sf = char_poly_hermitian(m).square_free_part();
    const long n = chi_sf.degree();
    const auto roots = isolate_real_roots(chi_sf);

    // Powers of m up to n-1 for Q(x, m) = (chi_sf(x) - chi_sf(m)) / (x - m).
    std::vector<QMatrix> powers;
    powers.push_back(QMatrix::identity(d));
    for (long k = 1; k < n; ++k) powers.push_back(powers.back() * m);

    // Q(x, m) = sum_t x^t C_t with C_t = sum_{j > t} a_j m^(j-1-t).
    std::vector<QMatrix> coeff(n, QMatrix(d, d));
    for (long t = 0; t < n; ++t)
        for (long j = t + 1; j <= n; ++j)
            coeff[t] = coeff[t] + GaussianRational(Rational(chi_sf.coeff(j))) * powers[j - 1 - t];

    const IntPoly dchi = chi_sf.derivative();

    IntPoly chi_irr = chi_sf;
    for (const auto& root : roots) {
        if (!root.is_rational()) {
            split.has_irrational = true;
            continue;
        }
        const Rational& r = root.rational_value();
        QMatrix p(d, d);
        GaussianRational xpow(Rational(1));
        for (long t = 0; t < n; ++t) {
            p = p + xpow * coeff[t];
            xpow *= GaussianRational(r);
        }
        p = GaussianRational(Rational(1) / dchi.evaluate(r)) * p;
        check_projector(p);
        split.projectors.push_back(std::move(p));
        split.rational_eigenvalues.push_back(r);
        chi_irr = chi_irr.divide_exact(monic_linear(r));
    }

    if (split.has_irrational) {
        // Pool over the conjugate family by the field trace map, and check
        // against the complement of the rational projectors.
        const AlgebraicNumber* first_irr = nullptr;
        for (const auto& root : roots)
            if (!root.is_rational()) {
                first_irr = &root;
                break;
            }
        auto ctx = std::make_shared<FieldContext>(AlgebraicNumber::irrational(
            chi_irr, first_irr->interval().lo, first_irr->interval().hi));
        std::vector<GaussianRational> dcoeffs(dchi.degree() + 1);
        for (long i = 0; i <= dchi.degree(); ++i)
            dcoeffs[i] = GaussianRational(Rational(dchi.coeff(i)));
        FieldElement w = FieldElement(ctx, dcoeffs).inverse();

        QMatrix pool(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<GaussianRational> cs(n);
                for (long t = 0; t < n; ++t) cs[t] = coeff[t](i, j);
                pool(i, j) = (FieldElement(ctx, std::move(cs)) * w).trace();
            }

        QMatrix complement = QMatrix::identity(d);
        for (const auto& p : split.projectors) complement = complement - p;
        if (pool != complement)
            throw std::logic_error("irrational eigenprojector pool failed its cross-check");
        check_projector(pool);
        split.projectors.push_back(std::move(pool));
    }

    QMatrix total(d, d);
    for (const auto& p : split.projectors) total = total + p;
    if (total != QMatrix::identity(d)) throw std::logic_error("spectral split does not resolve identity");
    return split;
}

namespace {

std::vector<Rational> vectorize_hermitian(const QMatrix& h) {
    const std::size_t d = h.rows();
    std::vector<Rational> v;
    v.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) v.push_back(h(i, i).re);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            v.push_back(h(i, j).re);
            v.push_back(h(i, j).im);
        }
    return v;
}

}  // namespace

QMatrix embed_at(const QMatrix& op, const std::vector<long>& dims, std::size_t pos) {
    std::size_t pre = 1, post = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k < pos) pre *= dims[k];
        if (k > pos) post *= dims[k];
    }
    const std::size_t dj = op.rows();
    QMatrix emb(pre * dj * post, pre * dj * post);
    for (std::size_t p = 0; p < pre; ++p)
        for (std::size_t i = 0; i < dj; ++i)
            for (std::size_t j = 0; j < dj; ++j) {
                if (op(i, j).is_zero()) continue;
                for (std::size_t q = 0; q < post; ++q)
                    emb((p * dj + i) * post + q, (p * dj + j) * post + q) = op(i, j);
            }
    return emb;
}

RMatrix commutation_system(const std::vector<QMatrix>& constraints, const std::vector<long>& dims,
                           std::size_t pos) {
    const std::size_t dim = dims[pos];
    const auto sigma = hermitian_basis(dim);
    // Rows: real and imaginary parts of every commutator entry, for every
    // constraint.  Columns: the sigma-expansion coefficients (real).
    std::size_t rows = 0;
    for (const auto& y : constraints) rows += 2 * y.rows() * y.rows();
    RMatrix xi(rows, sigma.size());
    std::size_t r0 = 0;
    for (const auto& y : constraints) {
        // Clear denominators: scaling a constraint does not change its
        // commutant.
        BigInt lcm = 1;
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j) {
                lcm = boost::multiprecision::lcm(lcm, denominator(y(i, j).re));
                lcm = boost::multiprecision::lcm(lcm, denominator(y(i, j).im));
            }
        QMatrix yi = GaussianRational(Rational(lcm)) * y;
        const std::size_t dy = yi.rows();
        for (std::size_t l = 0; l < sigma.size(); ++l) {
            QMatrix emb = embed_at(sigma[l], dims, pos);
            QMatrix c = emb * yi - yi * emb;
            for (std::size_t i = 0; i < dy; ++i)
                for (std::size_t j = 0; j < dy; ++j) {
                    xi(r0 + 2 * (i * dy + j), l) = c(i, j).re;
                    xi(r0 + 2 * (i * dy + j) + 1, l) = c(i, j).im;
                }
        }
        r0 += 2 * dy * dy;
    }
    return xi;
}

std::vector<QMatrix> solutions_from_coefficients(const std::vector<std::vector<Rational>>& coeffs,
                                                 std::size_t dim) {
    const auto sigma = hermitian_basis(dim);
    std::vector<QMatrix> out;
    for (const auto& v : coeffs) {
        QMatrix s(dim, dim);
        for (std::size_t l = 0; l < sigma.size(); ++l)
            if (!v[l].is_zero()) s = s + GaussianRational(v[l]) * sigma[l];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<QMatrix> commutant_solutions(const std::vector<QMatrix>& constraints,
                                         const std::vector<long>& dims, std::size_t pos) {
    auto elim = bareiss_eliminate(commutation_system(constraints, dims, pos));
    return solutions_from_coefficients(elim.null_space, dims[pos]);
}

namespace {

QMatrix random_combination(const std::vector<QMatrix>& basis, std::mt19937_64& rng, long bound) {
    QMatrix m(basis[0].rows(), basis[0].cols());
    for (const auto& s : basis) {
        long r = static_cast<long>(rng() % (2 * bound + 1)) - bound;
        if (r != 0) m = m + GaussianRational(Rational(r)) * s;
    }
    return m;
}

// Common coarsening of two orthogonal-projector partitions: connected
// components of the overlap graph.  Both sides must sum to the same
// projector on every component.
std::optional<std::vector<QMatrix>> join_partitions(const std::vector<QMatrix>& p1,
                                                    const std::vector<QMatrix>& p2) {
    const std::size_t n1 = p1.size();
    const std::size_t total = n1 + p2.size();
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < p2.size(); ++j)
            if (!(p1[i] * p2[j]).trace().is_zero()) parent[find(i)] = find(n1 + j);

    const std::size_t d = p1[0].rows();
    std::vector<QMatrix> blocks;
    std::vector<std::size_t> comp_of(total);
    for (std::size_t i = 0; i < total; ++i) comp_of[i] = find(i);
    for (std::size_t rep = 0; rep < total; ++rep) {
        if (comp_of[rep] != rep) continue;
        QMatrix sum1(d, d), sum2(d, d);
        for (std::size_t i = 0; i < n1; ++i)
            if (comp_of[i] == rep) sum1 = sum1 + p1[i];
        for (std::size_t j = 0; j < p2.size(); ++j)
            if (comp_of[n1 + j] == rep) sum2 = sum2 + p2[j];
        if (sum1 != sum2) return std::nullopt;
        blocks.push_back(std::move(sum1));
    }
    return blocks;
}

}  // namespace

CommutantAnalysis analyze_commutant(const std::vector<QMatrix>& constraints,
                                    const std::vector<long>& dims, std::size_t pos,
                                    std::mt19937_64& rng) {
    CommutantAnalysis out;
    out.solutions = commutant_solutions(constraints, dims, pos);
    if (out.solutions.empty())
        throw std::logic_error("empty commutant (the identity always solves)");
    const std::size_t d = out.solutions[0].rows();

    // A pathological draw is detectable (joins inconsistent or a block
    // failing to commute with the solution space); redraw and resolve.
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 6) throw std::logic_error("analyze_commutant: repeated pathological draws");

        // Centre of the solution algebra: solutions that also commute with
        // two generic solution elements.
        std::vector<QMatrix> pinned = constraints;
        pinned.push_back(embed_at(random_combination(out.solutions, rng, 99), dims, pos));
        pinned.push_back(embed_at(random_combination(out.solutions, rng, 99), dims, pos));
        auto centre = commutant_solutions(pinned, dims, pos);
        if (centre.empty()) continue;

        const SpectralSplit s1 = spectral_split(random_combination(centre, rng, 1 << 20));
        const SpectralSplit s2 = spectral_split(random_combination(centre, rng, 1 << 20));
        auto joined = join_partitions(s1.projectors, s2.projectors);
        if (!joined) continue;

        bool central = true;
        for (const auto& b : *joined) {
            for (const auto& s : out.solutions)
                if (b * s != s * b) {
                    central = false;
                    break;
                }
            if (!central) break;
        }
        if (!central) continue;
        std::sort(joined->begin(), joined->end(), canonical_matrix_less);
        out.structure.blocks = std::move(*joined);
        break;
    }

    out.structure.complete = true;
    for (const auto& b : out.structure.blocks) {
        const GaussianRational tr = b.trace();
        if (!tr.im.is_zero() || !is_integer(tr.re)) throw std::logic_error("non-integer block rank");
        const BigInt rank = numerator(tr.re);
        bool full;
        if (rank == 1) {
            full = true;
        } else {
            RMatrix span(out.solutions.size(), d * d);
            for (std::size_t k = 0; k < out.solutions.size(); ++k) {
                auto v = vectorize_hermitian(b * out.solutions[k] * b);
                for (std::size_t c = 0; c < v.size(); ++c) span(k, c) = std::move(v[c]);
            }
            full = Rational(integer_rank(span)) == Rational(rank * rank);
        }
        out.structure.full_freedom.push_back(full);
        if (!full) out.structure.complete = false;
    }
    return out;
}

}  // namespace concord
