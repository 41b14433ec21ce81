#pragma once

#include <cstddef>
#include <vector>

#include "concord/errors.hpp"
#include "concord/rational.hpp"

namespace concord {

// Dense rectangular matrix over an exact scalar type (GaussianRational,
// Rational, FieldElement).  Value semantics throughout.
template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = ::concord::conj((*this)(i, j));
        return r;
    }

    T trace() const {
        T sum{};
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) sum += (*this)(i, i);
        return sum;
    }

    bool is_zero() const {
        for (const T& v : data_)
            if (!(v == T{})) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, b.cols_, T{});
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) r.data_[i] = s * m.data_[i];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
        return r;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using QMatrix = Matrix<GaussianRational>;
using RMatrix = Matrix<Rational>;

inline bool is_hermitian(const QMatrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (m(i, j) != m(j, i).conj()) return false;
    return true;
}

inline bool commutes(const QMatrix& a, const QMatrix& b) { return (a * b - b * a).is_zero(); }

// Result of fraction-free row reduction: the integer echelon form, the
// pivot columns, and an exact basis of the right null space (primitive
// integer vectors).
struct EliminationResult {
    RMatrix echelon;
    std::vector<std::size_t> pivot_columns;
    std::vector<std::vector<Rational>> null_space;

    std::size_t rank() const { return pivot_columns.size(); }
};

// Bareiss fraction-free elimination.  Rows are scaled to integers first;
// Gaussian-integer systems are handled by the QMatrix overload, which
// splits every row into its real and imaginary parts (the unknowns stay
// real).  Intermediate entries are the subdeterminants of the input, which
// bounds their bit length.
EliminationResult bareiss_eliminate(RMatrix system);
EliminationResult bareiss_eliminate(const QMatrix& system);

std::size_t integer_rank(const RMatrix& system);

// The surd-free modified Gram-Schmidt recurrence: output vectors are
// pairwise orthogonal rational combinations of the inputs; zero vectors
// produced by dependent inputs are dropped.  No normalisation is applied.
std::vector<std::vector<GaussianRational>> rational_gram_schmidt(
    const std::vector<std::vector<GaussianRational>>& vectors);

inline GaussianRational inner_product(const std::vector<GaussianRational>& a,
                                      const std::vector<GaussianRational>& b) {
    GaussianRational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
}

// Rank-1 projector v v^dag / <v,v>.
QMatrix projector_from_vector(const std::vector<GaussianRational>& v);

// Deterministic ordering for equal-shape matrices: row-major comparison of
// entries, numerically larger scalar first.
bool canonical_matrix_less(const QMatrix& a, const QMatrix& b);

// Exact inverse of a nonsingular square matrix (Gauss-Jordan with exact
// pivoting); throws std::invalid_argument on singular input.
QMatrix inverse(const QMatrix& m);

}  // namespace concord
