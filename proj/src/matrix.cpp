#include "concord/matrix.hpp"

#include <numeric>

namespace concord {

namespace {

// Scale a row to primitive integers (positive scaling only, so the null
// space and pivot structure are untouched).
void make_row_primitive(RMatrix& m, std::size_t row) {
    BigInt lcm = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const BigInt d = denominator(m(row, j));
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    if (lcm != 1)
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= Rational(lcm);
    BigInt g = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) g = boost::multiprecision::gcd(g, numerator(m(row, j)));
    if (g > 1)
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) /= Rational(g);
}

std::vector<Rational> primitive_integer_vector(std::vector<Rational> v) {
    BigInt lcm = 1;
    for (const Rational& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
    BigInt g = 0;
    for (Rational& x : v) {
        x *= Rational(lcm);
        g = boost::multiprecision::gcd(g, numerator(x));
    }
    if (g > 1)
        for (Rational& x : v) x /= Rational(g);
    for (const Rational& x : v) {
        if (!x.is_zero()) {
            if (x.sign() < 0)
                for (Rational& y : v) y = -y;
            break;
        }
    }
    return v;
}

}  // namespace

EliminationResult bareiss_eliminate(RMatrix system) {
    const std::size_t m = system.rows();
    const std::size_t n = system.cols();
    for (std::size_t i = 0; i < m; ++i) make_row_primitive(system, i);

    std::vector<std::size_t> pivots;
    Rational prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && system(p, col).is_zero()) ++p;
        if (p == m) continue;
        system.swap_rows(row, p);
        const Rational pivot = system(row, col);
        for (std::size_t i = row + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                system(i, j) = (pivot * system(i, j) - system(i, col) * system(row, j)) / prev;
            system(i, col) = 0;
        }
        prev = pivot;
        pivots.push_back(col);
        ++row;
    }

    EliminationResult result;
    result.pivot_columns = pivots;

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            const std::size_t pc = pivots[i];
            Rational acc(0);
            for (std::size_t j = pc + 1; j < n; ++j)
                if (!v[j].is_zero()) acc += system(i, j) * v[j];
            v[pc] = -acc / system(i, pc);
        }
        result.null_space.push_back(primitive_integer_vector(std::move(v)));
    }
    result.echelon = std::move(system);
    return result;
}

EliminationResult bareiss_eliminate(const QMatrix& system) {
    bool complex_rows = false;
    for (std::size_t i = 0; i < system.rows() && !complex_rows; ++i)
        for (std::size_t j = 0; j < system.cols(); ++j)
            if (!system(i, j).im.is_zero()) {
                complex_rows = true;
                break;
            }
    RMatrix real(system.rows() * (complex_rows ? 2 : 1), system.cols());
    for (std::size_t i = 0; i < system.rows(); ++i)
        for (std::size_t j = 0; j < system.cols(); ++j) {
            real(i, j) = system(i, j).re;
            if (complex_rows) real(system.rows() + i, j) = system(i, j).im;
        }
    return bareiss_eliminate(std::move(real));
}

std::size_t integer_rank(const RMatrix& system) { return bareiss_eliminate(system).rank(); }

std::vector<std::vector<GaussianRational>> rational_gram_schmidt(
    const std::vector<std::vector<GaussianRational>>& vectors) {
    std::vector<std::vector<GaussianRational>> out;
    std::vector<Rational> norms;  // <v'_i, v'_i>, real and positive
    for (const auto& v : vectors) {
        // v'_k = (prod_i N_i) v_k - sum_i <v_k, v'_i>^* (prod_{j != i} N_j) v'_i
        Rational all(1);
        for (const Rational& nrm : norms) all *= nrm;
        std::vector<GaussianRational> w(v.size());
        for (std::size_t c = 0; c < v.size(); ++c) w[c] = GaussianRational(all) * v[c];
        for (std::size_t i = 0; i < out.size(); ++i) {
            GaussianRational coeff = inner_product(v, out[i]).conj();
            Rational rest(1);
            for (std::size_t j = 0; j < out.size(); ++j)
                if (j != i) rest *= norms[j];
            coeff *= GaussianRational(rest);
            if (coeff.is_zero()) continue;
            for (std::size_t c = 0; c < v.size(); ++c) w[c] -= coeff * out[i][c];
        }
        bool zero = true;
        for (const auto& x : w)
            if (!x.is_zero()) {
                zero = false;
                break;
            }
        if (zero) continue;
        // Keep entries small; any positive rescaling preserves orthogonality.
        BigInt lcm = 1, g = 0;
        for (const auto& x : w) {
            lcm = boost::multiprecision::lcm(lcm, denominator(x.re));
            lcm = boost::multiprecision::lcm(lcm, denominator(x.im));
        }
        for (auto& x : w) {
            x.re *= Rational(lcm);
            x.im *= Rational(lcm);
            g = boost::multiprecision::gcd(g, numerator(x.re));
            g = boost::multiprecision::gcd(g, numerator(x.im));
        }
        if (g > 1)
            for (auto& x : w) {
                x.re /= Rational(g);
                x.im /= Rational(g);
            }
        GaussianRational nrm = inner_product(w, w);
        norms.push_back(nrm.re);
        out.push_back(std::move(w));
    }
    return out;
}

bool canonical_matrix_less(const QMatrix& a, const QMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const GaussianRational &x = a(i, j), &y = b(i, j);
            if (x.re != y.re) return x.re > y.re;
            if (x.im != y.im) return x.im > y.im;
        }
    return false;
}

QMatrix projector_from_vector(const std::vector<GaussianRational>& v) {
    GaussianRational n = inner_product(v, v);
    QMatrix p(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) p(i, j) = v[i] * v[j].conj() / n;
    return p;
}

QMatrix inverse(const QMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
    const std::size_t n = m.rows();
    QMatrix a = m;
    QMatrix inv = QMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) throw std::invalid_argument("inverse: singular matrix");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        GaussianRational scale = GaussianRational(Rational(1)) / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= scale;
            inv(c, j) *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            GaussianRational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace concord
