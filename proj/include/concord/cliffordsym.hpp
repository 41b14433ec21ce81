#pragma once

#include <cstdint>
#include <vector>

#include "concord/rational.hpp"

namespace concord {

// phase i^k times a product of X^x Z^z factors, one per qubit, in that
// per-site order.
struct PauliProduct {
    int phase_power = 0;  // exponent of i, mod 4
    std::vector<std::uint8_t> x, z;

    static PauliProduct z_at(std::size_t n, std::size_t j) {
        PauliProduct p;
        p.x.assign(n, 0);
        p.z.assign(n, 0);
        p.z[j] = 1;
        return p;
    }
    static PauliProduct x_at(std::size_t n, std::size_t j) {
        PauliProduct p;
        p.x.assign(n, 0);
        p.z.assign(n, 0);
        p.x[j] = 1;
        return p;
    }
    friend bool operator==(const PauliProduct& a, const PauliProduct& b) {
        return a.phase_power == b.phase_power && a.x == b.x && a.z == b.z;
    }
};

enum class ClKind { Not, Cnot, Swap };

struct ClOp {
    ClKind kind;
    std::size_t a = 0, b = 0;  // b unused for Not
};

struct ReversibleClassicalCircuit {
    std::size_t qubits = 0;
    std::vector<ClOp> ops;

    void append(const ReversibleClassicalCircuit& tail) {
        ops.insert(ops.end(), tail.ops.begin(), tail.ops.end());
    }
    ReversibleClassicalCircuit inverted() const {
        ReversibleClassicalCircuit inv;
        inv.qubits = qubits;
        inv.ops.assign(ops.rbegin(), ops.rend());  // the generators are involutions
        return inv;
    }
};

// tensor_j (I + q_j Z) / 2
struct DiagonalProductState {
    std::vector<Rational> q;  // each in [-1, 1]
};

struct SymmetryTestStats {
    long propagations = 0;
    long evaluations = 0;
};

// S^dag p S for the circuit unitary S, exact phase tracked.
PauliProduct propagate_pauli(const ReversibleClassicalCircuit& circuit, PauliProduct p);

// 0 when any X factor is present; otherwise phase * prod over z bits of q_j.
Rational diagonal_expectation(const DiagonalProductState& state, const PauliProduct& p);

// Theorem-1 test: S rho S^dag == rho iff all single-qubit Z expectations
// agree; 2N propagations and 2N expectation evaluations, counted in stats.
bool symmetry_test(const DiagonalProductState& state, const ReversibleClassicalCircuit& s,
                   SymmetryTestStats* stats = nullptr);

// Corollary-2 degeneracy diagnosis on a 1- or 2-qubit support: enumerate the
// affine reversible gates on b, keep those whose history-conjugate is a
// state symmetry, and return the orbit partition of b's basis strings.
std::vector<std::vector<long>> diagnose_degeneracy_12(const DiagonalProductState& state,
                                                      const ReversibleClassicalCircuit& history,
                                                      const std::vector<std::size_t>& b);

// The word of NOT/CNOT/SWAP ops realising a permutation of b's basis
// strings (all permutations of 1- and 2-qubit strings are affine).
ReversibleClassicalCircuit permutation_word(const std::vector<long>& perm,
                                            const std::vector<std::size_t>& b, std::size_t qubits);

}  // namespace concord
