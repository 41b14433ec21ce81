#include "concord/frase.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "concord/spectral.hpp"

namespace concord {

namespace {

// View of the bipartition: a = complement (ascending), b = given subset.
struct Bipartition {
    SupportSplit split;
    long da, db;
    std::vector<long> bdims;

    Bipartition(const QuditRegister& reg, const std::vector<std::size_t>& b)
        : split(reg, b), da(split.rest_dim()), db(split.support_dim()), bdims(split.support_dims()) {}

    long full_index(long ia, long ib) const { return split.full_index(ia, ib); }
};

// (1_a (x) op_b) as a full-register matrix.
QMatrix embed_on_b(const Bipartition& bp, const QMatrix& op) {
    QMatrix e(bp.da * bp.db, bp.da * bp.db);
    for (long y = 0; y < bp.da; ++y)
        for (long z = 0; z < bp.db; ++z)
            for (long w = 0; w < bp.db; ++w)
                if (!op(z, w).is_zero()) e(bp.full_index(y, z), bp.full_index(y, w)) = op(z, w);
    return e;
}

QMatrix partial_trace_b(const Bipartition& bp, const QMatrix& m) {
    QMatrix out(bp.da, bp.da);
    for (long y = 0; y < bp.da; ++y)
        for (long yp = 0; yp < bp.da; ++yp) {
            GaussianRational acc;
            for (long z = 0; z < bp.db; ++z) acc += m(bp.full_index(y, z), bp.full_index(yp, z));
            out(y, yp) = acc;
        }
    return out;
}

QMatrix slice(const Bipartition& bp, const QMatrix& rho, long y, long yp) {
    QMatrix s(bp.db, bp.db);
    for (long z = 0; z < bp.db; ++z)
        for (long w = 0; w < bp.db; ++w) s(z, w) = rho(bp.full_index(y, z), bp.full_index(yp, w));
    return s;
}

Sove sove_for_projector(const DenseState& state, const Bipartition& bp, const QMatrix& se,
                        bool verify) {
    QMatrix emb = embed_on_b(bp, se);
    QMatrix left = state.rho * emb;
    if (verify && left != emb * state.rho)
        throw NotAnEigenprojector("projector does not commute with the state on b");
    GaussianRational tr = se.trace();
    QMatrix cond = partial_trace_b(bp, left);
    if (tr != GaussianRational(Rational(1))) {
        if (tr.is_zero() || !tr.im.is_zero()) throw NotAnEigenprojector("degenerate projector trace");
        cond = GaussianRational(Rational(1) / tr.re) * cond;
    }
    if (verify) {
        // The defining product form rho (1 (x) se) = sove (x) se.
        QMatrix expect(left.rows(), left.cols());
        for (long y = 0; y < bp.da; ++y)
            for (long yp = 0; yp < bp.da; ++yp) {
                if (cond(y, yp).is_zero()) continue;
                for (long z = 0; z < bp.db; ++z)
                    for (long w = 0; w < bp.db; ++w)
                        expect(bp.full_index(y, z), bp.full_index(yp, w)) = cond(y, yp) * se(z, w);
            }
        if (left != expect) throw NotAnEigenprojector("state is not in product form over the projector");
    }
    return Sove{std::move(cond)};
}

}  // namespace

DenseState make_dense_state(QuditRegister reg, QMatrix rho) {
    if (rho.rows() != static_cast<std::size_t>(reg.total_dimension()) || !rho.is_square())
        throw ValidationError("dense state: dimension mismatch");
    if (!is_hermitian(rho)) throw ValidationError("dense state: not Hermitian");
    if (rho.trace() != GaussianRational(Rational(1)))
        throw ValidationError("dense state: trace must be exactly 1");
    return DenseState{std::move(reg), std::move(rho)};
}

Sove sove_of(const DenseState& state, const std::vector<std::size_t>& b, const QMatrix& se) {
    Bipartition bp(state.reg, b);
    if (se.rows() != static_cast<std::size_t>(bp.db) || !se.is_square())
        throw ValidationError("sove_of: projector dimension mismatch");
    return sove_for_projector(state, bp, se, /*verify=*/true);
}

std::vector<Frase> frase_decompose(const DenseState& state, const std::vector<std::size_t>& b,
                                   const LocalBasis* known_basis, const std::vector<long>* search_order,
                                   std::uint64_t seed) {
    Bipartition bp(state.reg, b);
    std::vector<QMatrix> se_blocks;

    if (known_basis != nullptr) {
        // Oracle path: rank-1 SEs enumerated in the supplied product basis.
        std::vector<long> order(bp.db);
        for (long i = 0; i < bp.db; ++i) order[i] = i;
        if (search_order != nullptr) order = *search_order;
        for (long idx : order) {
            auto dits = unpack_dits(idx, bp.bdims);
            se_blocks.push_back(embed_projector(*known_basis, b, {dits}));
        }
    } else {
        // General path: commutant of the b-slices of rho.
        std::vector<QMatrix> constraints;
        for (long y = 0; y < bp.da; ++y)
            for (long yp = 0; yp < bp.da; ++yp) {
                QMatrix s = slice(bp, state.rho, y, yp);
                if (!s.is_zero()) constraints.push_back(std::move(s));
            }
        std::mt19937_64 rng(seed);
        auto analysis = analyze_commutant(constraints, {bp.db}, 0, rng);
        if (!analysis.structure.complete)
            throw NotQuantumClassical("no complete set of rank-1 subsystem eigenprojectors on b");
        se_blocks = std::move(analysis.structure.blocks);
    }

    // Group by exact SOVE equality; FRASEs are the grouped sums.
    std::vector<Frase> frases;
    std::vector<Sove> raw;
    raw.reserve(se_blocks.size());
    for (const auto& blk : se_blocks)
        raw.push_back(sove_for_projector(state, bp, blk, /*verify=*/known_basis != nullptr));
    std::vector<bool> used(se_blocks.size(), false);
    for (std::size_t i = 0; i < se_blocks.size(); ++i) {
        if (used[i]) continue;
        QMatrix proj = se_blocks[i];
        for (std::size_t j = i + 1; j < se_blocks.size(); ++j) {
            if (used[j]) continue;
            if (raw[j] == raw[i]) {
                proj = proj + se_blocks[j];
                used[j] = true;
            }
        }
        used[i] = true;
        GaussianRational tr = proj.trace();
        Frase f;
        f.projector = std::move(proj);
        f.rank = static_cast<long>(numerator(tr.re).convert_to<long long>());
        f.sove = raw[i];
        frases.push_back(std::move(f));
    }
    // Maximality check: merged FRASEs must pairwise disagree (guaranteed by
    // the grouping) and reconstruct the state exactly.
    QMatrix recon(state.rho.rows(), state.rho.cols());
    for (const auto& f : frases) {
        QMatrix emb = embed_on_b(bp, f.projector);
        for (long y = 0; y < bp.da; ++y)
            for (long yp = 0; yp < bp.da; ++yp) {
                if (f.sove.op(y, yp).is_zero()) continue;
                for (long z = 0; z < bp.db; ++z)
                    for (long w = 0; w < bp.db; ++w) {
                        GaussianRational v = f.projector(z, w);
                        if (!v.is_zero())
                            recon(bp.full_index(y, z), bp.full_index(yp, w)) += f.sove.op(y, yp) * v;
                    }
            }
    }
    if (recon != state.rho)
        throw NotQuantumClassical("FRASE decomposition does not reconstruct the state");

    std::sort(frases.begin(), frases.end(),
              [](const Frase& x, const Frase& y) { return canonical_matrix_less(x.projector, y.projector); });
    return frases;
}

bool orthogonality_check(const Frase& f1, const Frase& f2) {
    return (f1.projector * f2.projector).trace().is_zero();
}

}  // namespace concord
