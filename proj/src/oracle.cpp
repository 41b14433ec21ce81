#include "concord/oracle.hpp"

#include "concord/spectral.hpp"

namespace concord {

DenseEvolution dense_initial(const Circuit& circuit, long dim_cap) {
    if (circuit.reg.total_dimension() > dim_cap)
        throw TooLarge("dense evolution exceeds the dimension cap");
    QMatrix rho(1, 1);
    rho(0, 0) = GaussianRational(Rational(1));
    for (std::size_t q = 0; q < circuit.reg.size(); ++q) {
        const long d = circuit.reg.dims[q];
        QMatrix local(d, d);
        for (long k = 0; k < d; ++k)
            local = local + GaussianRational(circuit.initial.probs[q][k]) *
                                circuit.initial.basis.per_qudit[q][k];
        rho = kron(rho, local);
    }
    return DenseEvolution{make_dense_state(circuit.reg, std::move(rho)), 0};
}

DenseEvolution evolve(const DenseEvolution& d, const Gate& gate, const QuditRegister& reg,
                      long dim_cap) {
    const long total = reg.total_dimension();
    if (total > dim_cap) throw TooLarge("dense evolution exceeds the dimension cap");
    SupportSplit split(reg, gate.support);
    const long dr = split.rest_dim(), ds = split.support_dim();
    const GaussianRational inv_n{Rational(BigInt(1), gate.radicand)};

    // rho <- (1 (x) M) rho (1 (x) M)^dag / n, block by block over the rest
    // indices; the radicand cancellation keeps everything rational.
    QMatrix out(total, total);
    QMatrix madj = gate.matrix.adjoint();
    for (long r = 0; r < dr; ++r)
        for (long rp = 0; rp < dr; ++rp) {
            QMatrix block(ds, ds);
            for (long z = 0; z < ds; ++z)
                for (long w = 0; w < ds; ++w)
                    block(z, w) = d.state.rho(split.full_index(r, z), split.full_index(rp, w));
            if (block.is_zero()) continue;
            QMatrix conj = gate.matrix * block * madj;
            for (long z = 0; z < ds; ++z)
                for (long w = 0; w < ds; ++w)
                    out(split.full_index(r, z), split.full_index(rp, w)) = inv_n * conj(z, w);
        }
    DenseEvolution next{DenseState{reg, std::move(out)}, d.history + 1};
    if (next.state.rho.trace() != GaussianRational(Rational(1)))
        throw std::logic_error("dense evolution broke the trace");
    return next;
}

bool check_concordant(const DenseEvolution& d, const LocalBasis& basis) {
    const auto& dims = d.state.reg.dims;
    for (std::size_t q = 0; q < dims.size(); ++q)
        for (const QMatrix& p : basis.per_qudit[q]) {
            QMatrix emb = embed_at(p, dims, q);
            if (!commutes(emb, d.state.rho)) return false;
        }
    return true;
}

std::map<std::string, Rational> dense_marginals(const DenseEvolution& d, const MeasurementSpec& spec) {
    std::map<std::string, Rational> out;
    std::vector<long> outcome(spec.targets.size(), 0);
    const auto& dims = d.state.reg.dims;
    for (;;) {
        QMatrix acc = d.state.rho;
        for (std::size_t t = 0; t < spec.targets.size(); ++t)
            acc = acc * embed_at(spec.targets[t].basis[outcome[t]], dims, spec.targets[t].qudit);
        GaussianRational p = acc.trace();
        if (!p.im.is_zero()) throw std::logic_error("complex marginal probability");
        if (!p.re.is_zero()) out[outcome_key(outcome)] += p.re;
        std::size_t t = spec.targets.size();
        bool done = true;
        while (t-- > 0) {
            if (++outcome[t] < static_cast<long>(spec.targets[t].basis.size())) {
                done = false;
                break;
            }
            outcome[t] = 0;
        }
        if (done) break;
    }
    return out;
}

}  // namespace concord
