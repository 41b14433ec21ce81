#include "concord/cliffordsym.hpp"

#include <array>
#include <map>
#include <stdexcept>

#include "concord/errors.hpp"

namespace concord {

PauliProduct propagate_pauli(const ReversibleClassicalCircuit& circuit, PauliProduct p) {
    if (p.x.size() != circuit.qubits || p.z.size() != circuit.qubits)
        throw std::invalid_argument("propagate_pauli: size mismatch");
    // S^dag P S folds the gates in reverse temporal order.
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        const ClOp& op = *it;
        switch (op.kind) {
            case ClKind::Not:
                if (p.z[op.a]) p.phase_power = (p.phase_power + 2) & 3;
                break;
            case ClKind::Cnot:
                // X_c -> X_c X_t, Z_t -> Z_c Z_t; no phase in X^x Z^z order.
                p.x[op.b] ^= p.x[op.a];
                p.z[op.a] ^= p.z[op.b];
                break;
            case ClKind::Swap:
                std::swap(p.x[op.a], p.x[op.b]);
                std::swap(p.z[op.a], p.z[op.b]);
                break;
        }
    }
    return p;
}

Rational diagonal_expectation(const DiagonalProductState& state, const PauliProduct& p) {
    for (auto xbit : p.x)
        if (xbit) return Rational(0);
    Rational prod(1);
    for (std::size_t j = 0; j < p.z.size(); ++j)
        if (p.z[j]) prod *= state.q[j];
    if (p.phase_power & 1) {
        if (!prod.is_zero())
            throw ValidationError("diagonal_expectation: non-Hermitian observable (imaginary phase)");
        return Rational(0);
    }
    return p.phase_power == 2 ? -prod : prod;
}

bool symmetry_test(const DiagonalProductState& state, const ReversibleClassicalCircuit& s,
                   SymmetryTestStats* stats) {
    const std::size_t n = state.q.size();
    ReversibleClassicalCircuit empty;
    empty.qubits = n;
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) {
        PauliProduct lhs = propagate_pauli(s, PauliProduct::z_at(n, j));
        PauliProduct rhs = propagate_pauli(empty, PauliProduct::z_at(n, j));
        if (stats) stats->propagations += 2;
        Rational a = diagonal_expectation(state, lhs);
        Rational b = diagonal_expectation(state, rhs);
        if (stats) stats->evaluations += 2;
        if (a != b) ok = false;
        if (!ok && !stats) return false;
    }
    return ok;
}

namespace {

// All permutations of 2-bit strings expressed as NOT/CNOT/SWAP words over
// local qubit slots {0, 1}; built once by breadth-first search.
struct LocalOp {
    ClKind kind;
    std::size_t a, b;
};

using Perm4 = std::array<long, 4>;

long apply_local(const LocalOp& op, long s) {
    switch (op.kind) {
        case ClKind::Not:
            return op.a == 0 ? s ^ 2 : s ^ 1;
        case ClKind::Cnot:
            if (op.a == 0) return s ^ ((s & 2) >> 1);
            return s ^ ((s & 1) << 1);
        case ClKind::Swap:
            return ((s & 1) << 1) | ((s & 2) >> 1);
    }
    return s;
}

const std::map<Perm4, std::vector<LocalOp>>& two_qubit_words() {
    static const std::map<Perm4, std::vector<LocalOp>> table = [] {
        const std::vector<LocalOp> gens = {{ClKind::Not, 0, 0},  {ClKind::Not, 1, 0},
                                           {ClKind::Cnot, 0, 1}, {ClKind::Cnot, 1, 0},
                                           {ClKind::Swap, 0, 1}};
        std::map<Perm4, std::vector<LocalOp>> words;
        Perm4 id{0, 1, 2, 3};
        words[id] = {};
        std::vector<Perm4> frontier{id};
        while (!frontier.empty()) {
            std::vector<Perm4> next;
            for (const auto& p : frontier)
                for (const auto& g : gens) {
                    Perm4 q;
                    for (int s = 0; s < 4; ++s) q[s] = apply_local(g, p[s]);
                    if (words.count(q)) continue;
                    auto w = words[p];
                    w.push_back(g);
                    words[q] = std::move(w);
                    next.push_back(q);
                }
            frontier = std::move(next);
        }
        if (words.size() != 24) throw std::logic_error("two-qubit affine table incomplete");
        return words;
    }();
    return table;
}

}  // namespace

ReversibleClassicalCircuit permutation_word(const std::vector<long>& perm,
                                            const std::vector<std::size_t>& b, std::size_t qubits) {
    ReversibleClassicalCircuit c;
    c.qubits = qubits;
    if (b.size() == 1) {
        if (perm == std::vector<long>{0, 1}) return c;
        if (perm == std::vector<long>{1, 0}) {
            c.ops.push_back({ClKind::Not, b[0], 0});
            return c;
        }
        throw std::invalid_argument("permutation_word: bad 1-qubit permutation");
    }
    if (b.size() == 2) {
        Perm4 key{};
        if (perm.size() != 4) throw std::invalid_argument("permutation_word: bad 2-qubit permutation");
        for (int s = 0; s < 4; ++s) key[s] = perm[s];
        auto it = two_qubit_words().find(key);
        if (it == two_qubit_words().end())
            throw std::invalid_argument("permutation_word: unreachable permutation");
        for (const auto& op : it->second)
            c.ops.push_back({op.kind, b[op.a], op.kind == ClKind::Not ? 0 : b[op.b]});
        return c;
    }
    throw SupportTooLarge("permutation_word: support larger than two qubits");
}

std::vector<std::vector<long>> diagnose_degeneracy_12(const DiagonalProductState& state,
                                                      const ReversibleClassicalCircuit& history,
                                                      const std::vector<std::size_t>& b) {
    if (b.empty() || b.size() > 2) throw SupportTooLarge("diagnose_degeneracy_12: |b| must be 1 or 2");
    const long strings = b.size() == 1 ? 2 : 4;

    std::vector<std::vector<long>> candidates;
    if (b.size() == 1) {
        candidates = {{0, 1}, {1, 0}};
    } else {
        for (const auto& [perm, word] : two_qubit_words())
            candidates.push_back({perm[0], perm[1], perm[2], perm[3]});
    }

    // Union of orbits of the accepted symmetries.
    std::vector<long> parent(strings);
    for (long s = 0; s < strings; ++s) parent[s] = s;
    auto find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (const auto& perm : candidates) {
        ReversibleClassicalCircuit s = history;
        s.append(permutation_word(perm, b, history.qubits));
        s.append(history.inverted());
        if (!symmetry_test(state, s)) continue;
        for (long x = 0; x < strings; ++x) {
            long y = perm[x];
            parent[find(x)] = find(y);
        }
    }

    std::vector<std::vector<long>> blocks;
    std::vector<long> root_block(strings, -1);
    for (long s = 0; s < strings; ++s) {
        long r = find(s);
        if (root_block[r] < 0) {
            root_block[r] = static_cast<long>(blocks.size());
            blocks.emplace_back();
        }
        blocks[root_block[r]].push_back(s);
    }
    return blocks;
}

}  // namespace concord
