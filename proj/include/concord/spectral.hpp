#pragma once

#include <random>
#include <vector>

#include "concord/field_element.hpp"
#include "concord/matrix.hpp"
#include "concord/polynomial.hpp"

namespace concord {

// Exact eigensplit of an integer Hermitian matrix.  Every rational
// eigenvalue contributes its exact rational eigenprojector; the irrational
// eigenvalues are pooled per matrix into the rational sum over the whole
// algebraically-conjugate family (computed twice, by the field trace map
// and by complementation, and cross-checked).
struct SpectralSplit {
    std::vector<QMatrix> projectors;
    std::vector<Rational> rational_eigenvalues;  // parallel prefix of projectors
    bool has_irrational = false;

    std::size_t rational_count() const { return rational_eigenvalues.size(); }
};

SpectralSplit spectral_split(const QMatrix& m);

// Minimal rational projectors commuting with every element of the Hermitian
// solution space, obtained as the common coarsening of the eigensplits of
// two independent random integer instances drawn from the centre of the
// solution algebra (two generic solution elements appended to the
// constraints pin the centre down, and central instances keep every
// eigenvalue rational whenever the block structure is rational).  A block
// is marked full_freedom when the restricted solution space is the complete
// Hermitian algebra on its range, i.e. when it can be split into rank-one
// solutions arbitrarily.
struct BlockStructure {
    std::vector<QMatrix> blocks;
    std::vector<bool> full_freedom;
    bool complete = false;
};

struct CommutantAnalysis {
    std::vector<QMatrix> solutions;
    BlockStructure structure;
};

CommutantAnalysis analyze_commutant(const std::vector<QMatrix>& constraints,
                                    const std::vector<long>& dims, std::size_t pos,
                                    std::mt19937_64& rng);

// Integer Hermitian operator basis: E_ii, then E_ij + E_ji, then
// i(E_ij - E_ji) for i < j.
std::vector<QMatrix> hermitian_basis(std::size_t dim);

// I_pre (x) op (x) I_post on the tensor product of `dims`, with op sitting
// at slot `pos`.
QMatrix embed_at(const QMatrix& op, const std::vector<long>& dims, std::size_t pos);

// The integer linear system whose null space parametrises Hermitian rho (on
// the qudit at slot `pos`) with [I (x) rho, y] = 0 for every constraint y:
// rows are the real and imaginary parts of the commutator entries, columns
// the coefficients over the Hermitian operator basis.
RMatrix commutation_system(const std::vector<QMatrix>& constraints, const std::vector<long>& dims,
                           std::size_t pos);

// Rebuild solution matrices from null-space coefficient vectors.
std::vector<QMatrix> solutions_from_coefficients(const std::vector<std::vector<Rational>>& coeffs,
                                                 std::size_t dim);

// commutation_system + bareiss_eliminate + solutions_from_coefficients.
std::vector<QMatrix> commutant_solutions(const std::vector<QMatrix>& constraints,
                                         const std::vector<long>& dims, std::size_t pos);

}  // namespace concord
