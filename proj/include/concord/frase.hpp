#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "concord/circuit.hpp"
#include "concord/matrix.hpp"

namespace concord {

// Explicitly represented register state at desk scale: Hermitian with
// trace exactly 1; positive semidefiniteness comes from construction (unitary
// evolution of valid initial states).
struct DenseState {
    QuditRegister reg;
    QMatrix rho;
};

DenseState make_dense_state(QuditRegister reg, QMatrix rho);

// Unnormalised conditional state on the complement subsystem.
struct Sove {
    QMatrix op;
};

inline bool operator==(const Sove& a, const Sove& b) { return a.op == b.op; }

struct Frase {
    QMatrix projector;  // on subsystem b
    long rank = 0;
    Sove sove;
};

// Partial trace over b of (1 (x) se) rho, normalised by trace(se) for
// rank > 1.  Verifies the subsystem-eigenprojector property exactly and
// throws NotAnEigenprojector when it fails.
Sove sove_of(const DenseState& state, const std::vector<std::size_t>& b, const QMatrix& se);

// The unique FRASE decomposition of a state that is quantum-classical with
// respect to b.  When the product basis of the state is known (oracle
// usage), rank-1 SEs are enumerated in that basis, optionally in a
// caller-supplied order; otherwise the SEs come from simultaneous
// block-diagonalisation via the commutant of the b-slices of rho.
std::vector<Frase> frase_decompose(const DenseState& state, const std::vector<std::size_t>& b,
                                   const LocalBasis* known_basis = nullptr,
                                   const std::vector<long>* search_order = nullptr,
                                   std::uint64_t seed = 0x5eedb411u);

// trace(P1 P2) == 0 exactly.
bool orthogonality_check(const Frase& f1, const Frase& f2);

}  // namespace concord
