#pragma once

#include <map>
#include <string>

#include "concord/circuit.hpp"
#include "concord/frase.hpp"
#include "concord/simulator.hpp"

namespace concord {

// Dense exact reference evolution at desk scale: the full density matrix in
// Gaussian rationals, trace preserved exactly at every step.
struct DenseEvolution {
    DenseState state;
    int history = 0;  // gate index reached
};

DenseEvolution dense_initial(const Circuit& circuit, long dim_cap = 1 << 10);

DenseEvolution evolve(const DenseEvolution& d, const Gate& gate, const QuditRegister& reg,
                      long dim_cap = 1 << 10);

// rho is exactly diagonal in the product basis: it commutes with every
// per-qudit basis projector.
bool check_concordant(const DenseEvolution& d, const LocalBasis& basis);

// Tr(rho * measurement projectors), exact; keys match the simulator's
// outcome keys.
std::map<std::string, Rational> dense_marginals(const DenseEvolution& d, const MeasurementSpec& spec);

}  // namespace concord
