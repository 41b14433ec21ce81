#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "concord/circuit.hpp"

namespace concord {

// Ground truth planted by the gate generator.
struct GateTruth {
    std::vector<std::vector<long>> blocks;  // planted partition of support strings
    PermutationGate planted_perm;
    std::vector<std::vector<QMatrix>> basis_after;  // per support qudit, rank-1
};

struct GeneratedGate {
    Gate gate;
    std::vector<std::vector<QMatrix>> prev_basis;  // per support qudit
    GateTruth truth;
};

struct GeneratedCircuit {
    Circuit circuit;
    std::vector<GateTruth> truths;
};

// Random rational unitary via the Cayley transform of a random Gaussian
// integer Hermitian matrix.
QMatrix random_rational_unitary(long dim, std::mt19937_64& rng);

// Complete rank-1 rational local bases, one per qudit.
LocalBasis random_local_basis(const std::vector<long>& dims, std::mt19937_64& rng);

// A single gate of the form G = L D B L'^dag with freshly drawn rational
// bases, a random permutation D and random rational block unitaries B on a
// random partition (singleton-biased).  The returned gate is exactly of the
// M / sqrt(n) form.
GeneratedGate random_ldbl_gate(const std::vector<long>& support_dims, std::mt19937_64& rng,
                               bool singleton_blocks_only = false);

// A whole rationally-concordant circuit with planted ground truth: gates are
// L D B L'^dag where every B respects the true degeneracy structure of the
// evolving distribution, so the state stays concordant after every gate.
GeneratedCircuit generate_concordant_circuit(const std::vector<long>& dims, int n_gates,
                                             int max_support, std::uint64_t seed);

}  // namespace concord
