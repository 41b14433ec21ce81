#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concord/cliffordsym.hpp"
#include "concord/frase.hpp"
#include "concord/matrix.hpp"

using namespace concord;

namespace {

GaussianRational g(long num, long den = 1) { return GaussianRational(Rational(num, den)); }

// Dense oracle: Pauli products and classical gates as explicit matrices,
// qubit 0 leftmost.
QMatrix pauli_matrix(const PauliProduct& p) {
    QMatrix x(2, 2), z(2, 2);
    x(0, 1) = x(1, 0) = g(1);
    z(0, 0) = g(1);
    z(1, 1) = g(-1);
    QMatrix acc(1, 1);
    acc(0, 0) = g(1);
    for (std::size_t j = 0; j < p.x.size(); ++j) {
        QMatrix site = QMatrix::identity(2);
        if (p.x[j]) site = x;
        if (p.z[j]) site = site * z;
        acc = kron(acc, site);
    }
    GaussianRational phase = g(1);
    for (int k = 0; k < (p.phase_power & 3); ++k) phase *= gaussian_i();
    return phase * acc;
}

QMatrix circuit_matrix(const ReversibleClassicalCircuit& c) {
    const long n = static_cast<long>(c.qubits);
    const long dim = 1L << n;
    QMatrix u = QMatrix::identity(dim);
    auto bit = [&](long idx, std::size_t q) { return (idx >> (n - 1 - static_cast<long>(q))) & 1; };
    auto flip = [&](long idx, std::size_t q) { return idx ^ (1L << (n - 1 - static_cast<long>(q))); };
    for (const auto& op : c.ops) {
        QMatrix m(dim, dim);
        for (long i = 0; i < dim; ++i) {
            long img = i;
            switch (op.kind) {
                case ClKind::Not:
                    img = flip(i, op.a);
                    break;
                case ClKind::Cnot:
                    if (bit(i, op.a)) img = flip(i, op.b);
                    break;
                case ClKind::Swap: {
                    long ba = bit(i, op.a), bb = bit(i, op.b);
                    if (ba != bb) img = flip(flip(i, op.a), op.b);
                    break;
                }
            }
            m(img, i) = g(1);
        }
        u = m * u;
    }
    return u;
}

QMatrix state_matrix(const DiagonalProductState& s) {
    QMatrix acc(1, 1);
    acc(0, 0) = g(1);
    for (const Rational& q : s.q) {
        QMatrix site(2, 2);
        site(0, 0) = GaussianRational((Rational(1) + q) / 2);
        site(1, 1) = GaussianRational((Rational(1) - q) / 2);
        acc = kron(acc, site);
    }
    return acc;
}

ReversibleClassicalCircuit random_circuit(std::size_t n, int gates, std::mt19937_64& rng) {
    ReversibleClassicalCircuit c;
    c.qubits = n;
    for (int i = 0; i < gates; ++i) {
        int kind = rng() % 3;
        std::size_t a = rng() % n, b = rng() % n;
        while (b == a) b = rng() % n;
        if (kind == 0)
            c.ops.push_back({ClKind::Not, a, 0});
        else if (kind == 1)
            c.ops.push_back({ClKind::Cnot, a, b});
        else
            c.ops.push_back({ClKind::Swap, a, b});
    }
    return c;
}

}  // namespace

TEST_CASE("standard stabilizer updates") {
    ReversibleClassicalCircuit cnot;
    cnot.qubits = 2;
    cnot.ops.push_back({ClKind::Cnot, 0, 1});
    // Z on the target pulls back to Z Z.
    PauliProduct z2 = PauliProduct::z_at(2, 1);
    PauliProduct out = propagate_pauli(cnot, z2);
    CHECK(out.z == std::vector<std::uint8_t>{1, 1});
    CHECK(out.x == std::vector<std::uint8_t>{0, 0});
    CHECK(out.phase_power == 0);

    ReversibleClassicalCircuit notg;
    notg.qubits = 1;
    notg.ops.push_back({ClKind::Not, 0, 0});
    PauliProduct z = propagate_pauli(notg, PauliProduct::z_at(1, 0));
    CHECK(z.z == std::vector<std::uint8_t>{1});
    CHECK(z.phase_power == 2);  // -Z
}

TEST_CASE("propagation equals dense conjugation on random circuits") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 3;  // up to 4 qubits
        auto circ = random_circuit(n, 20, rng);
        PauliProduct p;
        p.x.resize(n);
        p.z.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            p.x[j] = rng() & 1;
            p.z[j] = rng() & 1;
        }
        p.phase_power = rng() % 4;
        QMatrix s = circuit_matrix(circ);
        QMatrix lhs = pauli_matrix(propagate_pauli(circ, p));
        QMatrix rhs = s.adjoint() * pauli_matrix(p) * s;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("propagation is a homomorphism over circuit concatenation") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 3;
        auto c1 = random_circuit(n, 10, rng);
        auto c2 = random_circuit(n, 10, rng);
        ReversibleClassicalCircuit both = c1;
        both.append(c2);
        for (std::size_t j = 0; j < n; ++j) {
            PauliProduct p = PauliProduct::z_at(n, j);
            CHECK(propagate_pauli(both, p) == propagate_pauli(c1, propagate_pauli(c2, p)));
        }
    }
}

TEST_CASE("diagonal expectations") {
    DiagonalProductState s{{Rational(1), Rational(1, 2)}};
    CHECK(diagonal_expectation(s, PauliProduct::z_at(2, 0)) == Rational(1));
    DiagonalProductState s2{{Rational(1, 2), Rational(1, 3)}};
    PauliProduct zz;
    zz.x.assign(2, 0);
    zz.z.assign(2, 1);
    CHECK(diagonal_expectation(s2, zz) == Rational(1, 6));
    CHECK(diagonal_expectation(s2, PauliProduct::x_at(2, 0)) == Rational(0));
    // Imaginary phase with nonzero value: a non-Hermitian observable.
    PauliProduct bad = PauliProduct::z_at(2, 0);
    bad.phase_power = 1;
    CHECK_THROWS_AS(diagonal_expectation(s2, bad), ValidationError);
}

TEST_CASE("symmetry test basics and operation counts") {
    DiagonalProductState equal{{Rational(1, 3), Rational(1, 3)}};
    ReversibleClassicalCircuit swap;
    swap.qubits = 2;
    swap.ops.push_back({ClKind::Swap, 0, 1});
    SymmetryTestStats stats;
    CHECK(symmetry_test(equal, swap, &stats));
    CHECK(stats.propagations == 4);  // 2N with N = 2
    CHECK(stats.evaluations == 4);

    ReversibleClassicalCircuit notg;
    notg.qubits = 1;
    notg.ops.push_back({ClKind::Not, 0, 0});
    CHECK(symmetry_test(DiagonalProductState{{Rational(0)}}, notg));
    CHECK(!symmetry_test(DiagonalProductState{{Rational(1)}}, notg));
}

TEST_CASE("Theorem 1 equivalence against the dense oracle") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> qdist(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        DiagonalProductState state;
        for (std::size_t j = 0; j < n; ++j) state.q.push_back(Rational(qdist(rng), 2));
        auto circ = random_circuit(n, 6, rng);
        QMatrix s = circuit_matrix(circ);
        QMatrix rho = state_matrix(state);
        bool dense_symmetric = (s * rho * s.adjoint()) == rho;
        CHECK(symmetry_test(state, circ) == dense_symmetric);
    }
}

TEST_CASE("degeneracy diagnosis on one qubit") {
    ReversibleClassicalCircuit empty;
    empty.qubits = 1;
    auto mixed = diagnose_degeneracy_12(DiagonalProductState{{Rational(0)}}, empty, {0});
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0] == std::vector<long>{0, 1});

    auto pure = diagnose_degeneracy_12(DiagonalProductState{{Rational(1)}}, empty, {0});
    CHECK(pure.size() == 2);

    CHECK_THROWS_AS(
        diagnose_degeneracy_12(DiagonalProductState{{Rational(0)}}, empty, {0, 0, 0}),
        SupportTooLarge);
}

TEST_CASE("degeneracy blocks match the dense FRASE decomposition") {
    std::mt19937_64 rng(41);
    std::vector<Rational> qvals{Rational(0), Rational(1), Rational(1, 2), Rational(-1, 2),
                                Rational(1, 2)};
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3;
        DiagonalProductState state;
        for (std::size_t j = 0; j < n; ++j) state.q.push_back(qvals[rng() % qvals.size()]);
        auto history = random_circuit(n, 5, rng);
        std::vector<std::size_t> b{0, 2};
        auto blocks = diagnose_degeneracy_12(state, history, b);

        // Dense oracle: evolve the diagonal state through the history and
        // decompose on b.
        QMatrix s = circuit_matrix(history);
        QMatrix rho = s * state_matrix(state) * s.adjoint();
        DenseState dense = make_dense_state(QuditRegister{{2, 2, 2}}, rho);
        auto frases = frase_decompose(dense, b);

        REQUIRE(blocks.size() == frases.size());
        // Each diagnosed block corresponds to a computational-basis FRASE.
        for (const auto& block : blocks) {
            QMatrix proj(4, 4);
            for (long x : block) proj(x, x) = g(1);
            bool found = false;
            for (const auto& f : frases) found |= (f.projector == proj);
            CHECK(found);
        }
    }
}
