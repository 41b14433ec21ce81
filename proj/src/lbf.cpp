#include "concord/lbf.hpp"

#include <algorithm>
#include <map>

#include "concord/spectral.hpp"

namespace concord {

LbfInput make_lbf_input(const Gate& gate, const LocalBasis& register_basis, const QuditRegister& reg) {
    LbfInput in;
    in.gate = gate;
    for (std::size_t q : gate.support) {
        in.prev_basis.push_back(register_basis.per_qudit.at(q));
        in.dims.push_back(reg.dims.at(q));
    }
    return in;
}

std::vector<CandidateProjector> candidates_of_rank(long dim, long rank) {
    std::vector<CandidateProjector> out;
    std::vector<long> subset(rank);
    // Lexicographic combinations.
    for (long i = 0; i < rank; ++i) subset[i] = i;
    const bool middle = 2 * rank == dim;
    for (;;) {
        bool keep = true;
        if (middle) {
            std::vector<long> complement;
            std::vector<bool> in(dim, false);
            for (long s : subset) in[s] = true;
            for (long i = 0; i < dim; ++i)
                if (!in[i]) complement.push_back(i);
            keep = subset < complement;  // one representative per complement pair
        }
        if (keep) out.push_back(CandidateProjector{subset});
        long i = rank - 1;
        while (i >= 0 && subset[i] == dim - rank + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (long j = i + 1; j < rank; ++j) subset[j] = subset[j - 1] + 1;
    }
    return out;
}

std::vector<CandidateProjector> enumerate_candidates(long dim, long dim_cap) {
    if (dim > dim_cap)
        throw GateTooLarge("candidate enumeration is O(2^d); support dimension " +
                           std::to_string(dim) + " exceeds the cap " + std::to_string(dim_cap));
    std::vector<CandidateProjector> out;
    for (long rank = 1; 2 * rank <= dim; ++rank) {
        auto batch = candidates_of_rank(dim, rank);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    std::vector<long> all(dim);
    for (long i = 0; i < dim; ++i) all[i] = i;
    out.push_back(CandidateProjector{std::move(all)});  // the identity
    return out;
}

namespace {

LocalBasis support_local_basis(const std::vector<std::vector<QMatrix>>& per_qudit) {
    LocalBasis b;
    b.per_qudit = per_qudit;
    return b;
}

std::vector<std::size_t> iota_support(std::size_t n) {
    std::vector<std::size_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = i;
    return s;
}

QMatrix embed_prev_subset(const LbfInput& input, const std::vector<long>& subset) {
    std::vector<std::vector<long>> strings;
    for (long s : subset) strings.push_back(unpack_dits(s, input.dims));
    return embed_projector(support_local_basis(input.prev_basis), iota_support(input.dims.size()),
                           strings);
}

QMatrix product_projector(const LocalBasis& basis, const std::vector<long>& dims, long packed) {
    auto dits = unpack_dits(packed, dims);
    QMatrix acc(1, 1);
    acc(0, 0) = GaussianRational(Rational(1));
    for (std::size_t k = 0; k < dims.size(); ++k) acc = kron(acc, basis.per_qudit[k][dits[k]]);
    return acc;
}

void verify_emitted_projector(const QMatrix& p, long dj) {
    if (!is_hermitian(p) || p * p != p || p.trace() != GaussianRational(Rational(1)))
        throw PromiseViolation("emitted local projector is not a rank-1 projector");
    if (dj > 2) {
        // Tr(p^3) = 1 as well, per the purity constraints beyond qubits.
        if ((p * p * p).trace() != GaussianRational(Rational(1)))
            throw PromiseViolation("emitted local projector fails the cubic trace constraint");
    }
}

}  // namespace

QMatrix conjugated_candidate(const LbfInput& input, const CandidateProjector& x) {
    return conjugate_projector(input.gate, embed_prev_subset(input, x.subset));
}

RMatrix build_linear_system(const LbfInput& input, const CandidateProjector& x, std::size_t qudit) {
    return commutation_system({conjugated_candidate(input, x)}, input.dims, qudit);
}

LocalBasisSolution solve_local_basis(const LbfInput& input, const CandidateProjector& x,
                                     std::mt19937_64& rng) {
    const QMatrix y = conjugated_candidate(input, x);
    LocalBasisSolution sol;
    sol.complete = true;
    for (std::size_t j = 0; j < input.dims.size(); ++j) {
        auto analysis = analyze_commutant({y}, input.dims, j, rng);
        sol.per_qudit_blocks.push_back(std::move(analysis.structure.blocks));
        sol.full_freedom.push_back(std::move(analysis.structure.full_freedom));
        if (!analysis.structure.complete) sol.complete = false;
    }
    return sol;
}

XkUniqueBasis xk_unique_basis(const LocalBasisSolution& sol, const LbfInput& input,
                              const CandidateProjector& x) {
    if (!sol.complete) throw std::invalid_argument("xk_unique_basis requires a complete solution");
    // The minimal-rank projectors common to all solutions are exactly the
    // intersected blocks; verify the commutation once more against the
    // conjugated candidate.
    const QMatrix y = conjugated_candidate(input, x);
    for (std::size_t j = 0; j < sol.per_qudit_blocks.size(); ++j)
        for (const auto& b : sol.per_qudit_blocks[j]) {
            QMatrix emb = embed_at(b, input.dims, j);
            if (!commutes(emb, y)) throw std::logic_error("X_k-unique block fails its commutation");
        }
    return XkUniqueBasis{sol.per_qudit_blocks};
}

std::optional<IncompatibilityWitness> compatibility_check(
    const std::vector<std::pair<CandidateProjector, XkUniqueBasis>>& chi, const LbfInput& input) {
    std::vector<QMatrix> conj;
    conj.reserve(chi.size());
    for (const auto& [cand, lb] : chi) conj.push_back(conjugated_candidate(input, cand));
    for (std::size_t k = 0; k < chi.size(); ++k)
        for (std::size_t j = 0; j < chi[k].second.per_qudit.size(); ++j)
            for (const auto& rho_u : chi[k].second.per_qudit[j]) {
                QMatrix emb = embed_at(rho_u, input.dims, j);
                for (std::size_t kp = 0; kp < chi.size(); ++kp) {
                    if (kp == k) continue;
                    QMatrix c = emb * conj[kp] - conj[kp] * emb;
                    if (!c.is_zero()) {
                        IncompatibilityWitness w;
                        w.k = chi[k].first;
                        w.k_prime = chi[kp].first;
                        w.qudit = j;
                        w.projector = rho_u;
                        w.commutator = std::move(c);
                        return w;
                    }
                }
            }
    return std::nullopt;
}

FineGrainResult fine_grain(const std::vector<std::pair<CandidateProjector, XkUniqueBasis>>& chi,
                           const LbfInput& input) {
    FineGrainResult out;
    for (std::size_t j = 0; j < input.dims.size(); ++j) {
        const long dj = input.dims[j];
        // Meet of the per-qudit block partitions over all of chi; the
        // members commute pairwise once the compatibility test has passed.
        std::vector<QMatrix> parts{QMatrix::identity(dj)};
        for (const auto& [cand, lb] : chi) {
            std::vector<QMatrix> next;
            for (const auto& p : parts)
                for (const auto& b : lb.per_qudit[j]) {
                    QMatrix prod = p * b;
                    if (prod.is_zero()) continue;
                    if (prod * prod != prod || !is_hermitian(prod))
                        throw PromiseViolation("block partitions do not commute after compatibility");
                    next.push_back(std::move(prod));
                }
            parts = std::move(next);
        }
        // Split rank >= 2 blocks into rank-1 rational projectors via the
        // surd-free Gram-Schmidt on their columns, trace-normalised.
        std::vector<QMatrix> rank1;
        for (const auto& block : parts) {
            GaussianRational tr = block.trace();
            if (tr == GaussianRational(Rational(1))) {
                rank1.push_back(block);
                continue;
            }
            std::vector<std::vector<GaussianRational>> cols;
            for (std::size_t c = 0; c < block.cols(); ++c) {
                std::vector<GaussianRational> col(dj);
                bool zero = true;
                for (long r = 0; r < dj; ++r) {
                    col[r] = block(r, c);
                    if (!col[r].is_zero()) zero = false;
                }
                if (!zero) cols.push_back(std::move(col));
            }
            auto ortho = rational_gram_schmidt(cols);
            for (const auto& v : ortho) rank1.push_back(projector_from_vector(v));
        }
        if (static_cast<long>(rank1.size()) != dj)
            throw PromiseViolation("fine-grained basis does not resolve the qudit identity");
        std::sort(rank1.begin(), rank1.end(), canonical_matrix_less);
        for (const auto& p : rank1) verify_emitted_projector(p, dj);
        QMatrix sum(dj, dj);
        for (const auto& p : rank1) sum = sum + p;
        if (sum != QMatrix::identity(dj))
            throw PromiseViolation("fine-grained projectors do not sum to identity");
        out.basis.per_qudit.push_back(std::move(rank1));
        out.blocks.push_back(parts);
    }
    return out;
}

std::vector<std::vector<long>> candidate_atoms(const std::vector<CandidateProjector>& subsets,
                                               long dim) {
    std::vector<std::vector<long>> atoms;
    std::vector<long> all(dim);
    for (long i = 0; i < dim; ++i) all[i] = i;
    atoms.push_back(std::move(all));
    for (const auto& cand : subsets) {
        std::vector<bool> member(dim, false);
        for (long s : cand.subset) member[s] = true;
        std::vector<std::vector<long>> next;
        for (const auto& atom : atoms) {
            std::vector<long> inside, outside;
            for (long s : atom) (member[s] ? inside : outside).push_back(s);
            if (!inside.empty()) next.push_back(std::move(inside));
            if (!outside.empty()) next.push_back(std::move(outside));
        }
        atoms = std::move(next);
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

PermutationGate find_permutation(const LbfInput& input, const LocalBasis& new_basis,
                                 const std::vector<std::vector<long>>& partition) {
    const long dim = input.dim();
    std::vector<QMatrix> new_products(dim);
    for (long y = 0; y < dim; ++y) new_products[y] = product_projector(new_basis, input.dims, y);

    PermutationGate d;
    d.support = input.gate.support;
    d.map.assign(dim, -1);
    std::vector<bool> taken(dim, false);
    for (const auto& atom : partition) {
        QMatrix image = conjugate_projector(input.gate, embed_prev_subset(input, atom));
        std::vector<long> targets;
        for (long y = 0; y < dim; ++y) {
            if (taken[y]) continue;
            if (image * new_products[y] == new_products[y]) targets.push_back(y);
        }
        if (targets.size() != atom.size())
            throw NoPermutation("block image does not resolve into new-basis projectors");
        QMatrix sum(dim, dim);
        for (long y : targets) sum = sum + new_products[y];
        if (sum != image)
            throw NoPermutation("block image differs from the matched projector sum");
        // Lexicographically-least consistent assignment: ascending sources
        // paired with ascending targets.
        for (std::size_t i = 0; i < atom.size(); ++i) {
            d.map[atom[i]] = targets[i];
            taken[targets[i]] = true;
        }
    }
    if (!d.is_bijection()) throw NoPermutation("assignment is not a bijection");
    return d;
}

LbfOutcome run_lbf(const LbfInput& input, const LbfOptions& options) {
    const long dim = input.dim();
    if (dim > options.dim_cap)
        throw GateTooLarge("gate support dimension " + std::to_string(dim) +
                           " exceeds the configured cap " + std::to_string(options.dim_cap));
    std::mt19937_64 rng(options.seed);

    std::vector<std::pair<CandidateProjector, XkUniqueBasis>> chi;
    auto solve_into_chi = [&](const CandidateProjector& cand) {
        auto sol = solve_local_basis(input, cand, rng);
        if (sol.complete) chi.emplace_back(cand, xk_unique_basis(sol, input, cand));
        return sol.complete;
    };

    auto conclude = [&]() -> LbfOutcome {
        if (chi.empty())
            throw PromiseViolation(
                "no candidate projector admits a complete local-basis solution");
        if (auto witness = compatibility_check(chi, input))
            return LbfIncompatible{std::move(*witness)};
        auto fg = fine_grain(chi, input);
        std::vector<CandidateProjector> subsets;
        for (const auto& [cand, lb] : chi) subsets.push_back(cand);
        auto atoms = candidate_atoms(subsets, dim);
        PermutationGate d = find_permutation(input, fg.basis, atoms);
        return LbfSuccess{std::move(fg.basis), std::move(d), std::move(atoms)};
    };

    // Rank-1 pass; when every rank-1 candidate is complete the remaining
    // ranks cannot add information or heralds, so the enumeration stops.
    bool all_rank1_complete = true;
    for (const auto& cand : candidates_of_rank(dim, 1))
        if (!solve_into_chi(cand)) all_rank1_complete = false;
    if (all_rank1_complete) return conclude();

    for (long rank = 2; 2 * rank <= dim; ++rank)
        for (const auto& cand : candidates_of_rank(dim, rank)) solve_into_chi(cand);
    // The identity candidate is always complete and constrains nothing.
    return conclude();
}

}  // namespace concord
