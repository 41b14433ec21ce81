#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "concord/circuit.hpp"
#include "concord/matrix.hpp"

namespace concord {

// One gate plus the rank-1 local basis on its support after the previous
// time step, indexed in support order.
struct LbfInput {
    Gate gate;
    std::vector<std::vector<QMatrix>> prev_basis;
    std::vector<long> dims;

    long dim() const {
        long d = 1;
        for (long x : dims) d *= x;
        return d;
    }
};

LbfInput make_lbf_input(const Gate& gate, const LocalBasis& register_basis, const QuditRegister& reg);

// X_k = sum over a subset of computational-basis dit strings of the support.
struct CandidateProjector {
    std::vector<long> subset;  // sorted packed indices

    long rank() const { return static_cast<long>(subset.size()); }
};

// Per-qudit block decompositions solving the local-basis-update equations
// for one candidate, with the full-freedom flag per block.
struct LocalBasisSolution {
    std::vector<std::vector<QMatrix>> per_qudit_blocks;
    std::vector<std::vector<bool>> full_freedom;
    bool complete = false;
};

// The minimal-rank uniquely-determined projectors per qudit.
struct XkUniqueBasis {
    std::vector<std::vector<QMatrix>> per_qudit;
};

struct IncompatibilityWitness {
    CandidateProjector k, k_prime;
    std::size_t qudit = 0;
    QMatrix projector;   // the LB_k element that fails
    QMatrix commutator;  // [1 (x) projector, conjugated X_k']
};

struct LbfSuccess {
    LocalBasis basis;  // rank-1, indexed by support position
    PermutationGate permutation;
    std::vector<std::vector<long>> partition;  // B_t: blocks of prev dit strings
};

struct LbfIncompatible {
    IncompatibilityWitness witness;
};

using LbfOutcome = std::variant<LbfSuccess, LbfIncompatible>;

inline bool lbf_succeeded(const LbfOutcome& o) { return std::holds_alternative<LbfSuccess>(o); }

struct LbfOptions {
    long dim_cap = 64;  // candidate enumeration is O(2^d)
    std::uint64_t seed = 0x10ca1ba515u;
};

// Candidates of one rank in canonical order; at rank d/2 only the
// lexicographically smaller member of each complement pair is kept.
std::vector<CandidateProjector> candidates_of_rank(long dim, long rank);

// Full stream: ranks 1..floor(d/2), then the identity candidate.
std::vector<CandidateProjector> enumerate_candidates(long dim, long dim_cap = 64);

// G L X L^dag G^dag, exactly rational.
QMatrix conjugated_candidate(const LbfInput& input, const CandidateProjector& x);

// The integer system whose null space parametrises Hermitian rho^(j)
// commuting with the conjugated candidate.
RMatrix build_linear_system(const LbfInput& input, const CandidateProjector& x, std::size_t qudit);

LocalBasisSolution solve_local_basis(const LbfInput& input, const CandidateProjector& x,
                                     std::mt19937_64& rng);

XkUniqueBasis xk_unique_basis(const LocalBasisSolution& sol, const LbfInput& input,
                              const CandidateProjector& x);

std::optional<IncompatibilityWitness> compatibility_check(
    const std::vector<std::pair<CandidateProjector, XkUniqueBasis>>& chi, const LbfInput& input);

struct FineGrainResult {
    LocalBasis basis;                        // rank-1 per support qudit, canonical order
    std::vector<std::vector<QMatrix>> blocks;  // per-qudit uniquely-determined blocks
};

FineGrainResult fine_grain(const std::vector<std::pair<CandidateProjector, XkUniqueBasis>>& chi,
                           const LbfInput& input);

PermutationGate find_permutation(const LbfInput& input, const LocalBasis& new_basis,
                                 const std::vector<std::vector<long>>& partition);

// Atoms of the Boolean algebra generated by the complete candidates: the
// dit-string blocks whose combined projectors are uniquely determined.
std::vector<std::vector<long>> candidate_atoms(const std::vector<CandidateProjector>& subsets, long dim);

LbfOutcome run_lbf(const LbfInput& input, const LbfOptions& options = {});

}  // namespace concord
