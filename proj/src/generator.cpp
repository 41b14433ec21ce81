#include "concord/generator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace concord {

namespace {

GaussianRational small_gaussian(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-2, 2);
    return {Rational(dist(rng)), Rational(dist(rng))};
}

QMatrix random_hermitian(long dim, std::mt19937_64& rng) {
    QMatrix k(dim, dim);
    std::uniform_int_distribution<int> dist(-2, 2);
    for (long i = 0; i < dim; ++i) {
        k(i, i) = GaussianRational(Rational(dist(rng)));
        for (long j = i + 1; j < dim; ++j) {
            k(i, j) = small_gaussian(rng);
            k(j, i) = k(i, j).conj();
        }
    }
    return k;
}

// Columns of a unitary as basis vectors.
std::vector<std::vector<GaussianRational>> columns_of(const QMatrix& u) {
    std::vector<std::vector<GaussianRational>> cols(u.cols());
    for (std::size_t c = 0; c < u.cols(); ++c) {
        cols[c].resize(u.rows());
        for (std::size_t r = 0; r < u.rows(); ++r) cols[c][r] = u(r, c);
    }
    return cols;
}

std::vector<QMatrix> projectors_of(const QMatrix& u) {
    std::vector<QMatrix> out;
    for (const auto& col : columns_of(u)) out.push_back(projector_from_vector(col));
    return out;
}

// Random partition of {0..n-1}; singleton-biased so most planted structure
// stays fully determined.
std::vector<std::vector<long>> random_partition(long n, std::mt19937_64& rng, bool singletons_only) {
    std::vector<std::vector<long>> blocks;
    if (singletons_only || n == 1) {
        for (long i = 0; i < n; ++i) blocks.push_back({i});
        return blocks;
    }
    std::uniform_int_distribution<int> coin(0, 99);
    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (long v : order) {
        bool merged = false;
        if (!blocks.empty() && coin(rng) < 35) {
            std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
            auto& blk = blocks[pick(rng)];
            if (blk.size() < 3) {
                blk.push_back(v);
                merged = true;
            }
        }
        if (!merged) blocks.push_back({v});
    }
    for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

// A nontrivial block whose permutation image is a product of per-qudit
// digit sets turns the gate into a controlled local unitary, which the LBF
// rightly heralds as incompatible (the G_exc.2 family).  The generator
// steers clear of that shape: swap image elements between blocks until no
// proper block of size >= 2 has a product-shaped image.
bool is_product_set(const std::vector<long>& strings, const std::vector<long>& dims) {
    std::vector<std::set<long>> digit_sets(dims.size());
    for (long s : strings) {
        auto d = unpack_dits(s, dims);
        for (std::size_t j = 0; j < dims.size(); ++j) digit_sets[j].insert(d[j]);
    }
    std::size_t prod = 1;
    for (const auto& ds : digit_sets) prod *= ds.size();
    return prod == strings.size();
}

void repair_product_images(std::vector<std::vector<long>>& blocks, std::vector<long>& perm,
                           const std::vector<long>& dims, std::mt19937_64& rng) {
    if (dims.size() < 2 || blocks.size() < 2) return;
    const long d = static_cast<long>(perm.size());
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::size_t bad = blocks.size();
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].size() < 2 || static_cast<long>(blocks[b].size()) == d) continue;
            std::vector<long> image;
            for (long z : blocks[b]) image.push_back(perm[z]);
            if (is_product_set(image, dims)) {
                bad = b;
                break;
            }
        }
        if (bad == blocks.size()) return;
        const auto& blk = blocks[bad];
        long z = blk[rng() % blk.size()];
        long zp = z;
        while (zp == z || std::find(blk.begin(), blk.end(), zp) != blk.end()) zp = rng() % d;
        std::swap(perm[z], perm[zp]);
    }
    // Give up on the merged structure: singletons are always safe.
    blocks.clear();
    for (long i = 0; i < d; ++i) blocks.push_back({i});
}

// G = U_new P_D B U_prev^dag as an exact M / sqrt(n) gate.
Gate assemble_gate(const std::vector<std::size_t>& support, const QMatrix& u_new,
                   const std::vector<long>& perm, const QMatrix& block_unitary,
                   const QMatrix& u_prev) {
    const std::size_t d = u_new.rows();
    QMatrix p(d, d);
    for (std::size_t x = 0; x < d; ++x) p(perm[x], x) = GaussianRational(Rational(1));
    QMatrix g = u_new * p * block_unitary * u_prev.adjoint();
    BigInt lcm = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            lcm = boost::multiprecision::lcm(lcm, denominator(g(i, j).re));
            lcm = boost::multiprecision::lcm(lcm, denominator(g(i, j).im));
        }
    Gate gate;
    gate.support = support;
    gate.matrix = GaussianRational(Rational(lcm)) * g;
    gate.radicand = lcm * lcm;
    return gate;
}

QMatrix block_diagonal_unitary(const std::vector<std::vector<long>>& blocks, long dim,
                               std::mt19937_64& rng) {
    QMatrix b(dim, dim);
    for (const auto& blk : blocks) {
        const long m = static_cast<long>(blk.size());
        QMatrix u = m == 1 ? QMatrix::identity(1) : random_rational_unitary(m, rng);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j) b(blk[i], blk[j]) = u(i, j);
    }
    return b;
}

QMatrix tensor_unitary(const std::vector<QMatrix>& per_qudit) {
    QMatrix acc(1, 1);
    acc(0, 0) = GaussianRational(Rational(1));
    for (const auto& u : per_qudit) acc = kron(acc, u);
    return acc;
}

}  // namespace

QMatrix random_rational_unitary(long dim, std::mt19937_64& rng) {
    // Cayley transform: (I + iK)(I - iK)^{-1} is unitary with rational
    // entries for Hermitian rational K.
    QMatrix k = random_hermitian(dim, rng);
    QMatrix ik = gaussian_i() * k;
    QMatrix id = QMatrix::identity(dim);
    return (id + ik) * inverse(id - ik);
}

LocalBasis random_local_basis(const std::vector<long>& dims, std::mt19937_64& rng) {
    LocalBasis basis;
    for (long d : dims) basis.per_qudit.push_back(projectors_of(random_rational_unitary(d, rng)));
    return basis;
}

GeneratedGate random_ldbl_gate(const std::vector<long>& support_dims, std::mt19937_64& rng,
                               bool singleton_blocks_only) {
    const std::size_t k = support_dims.size();
    long d = 1;
    for (long x : support_dims) d *= x;

    std::vector<QMatrix> u_prev_parts, u_new_parts;
    for (long x : support_dims) {
        u_prev_parts.push_back(random_rational_unitary(x, rng));
        u_new_parts.push_back(random_rational_unitary(x, rng));
    }
    QMatrix u_prev = tensor_unitary(u_prev_parts);
    QMatrix u_new = tensor_unitary(u_new_parts);

    auto blocks = random_partition(d, rng, singleton_blocks_only);
    std::vector<long> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    repair_product_images(blocks, perm, support_dims, rng);

    std::vector<std::size_t> support(k);
    std::iota(support.begin(), support.end(), std::size_t{0});

    GeneratedGate out;
    out.gate = assemble_gate(support, u_new, perm, block_diagonal_unitary(blocks, d, rng), u_prev);
    for (const auto& u : u_prev_parts) out.prev_basis.push_back(projectors_of(u));
    out.truth.blocks = blocks;
    out.truth.planted_perm.support = support;
    out.truth.planted_perm.map = perm;
    for (const auto& u : u_new_parts) out.truth.basis_after.push_back(projectors_of(u));
    return out;
}

GeneratedCircuit generate_concordant_circuit(const std::vector<long>& dims, int n_gates,
                                             int max_support, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = dims.size();
    GeneratedCircuit out;
    out.circuit.reg.dims = dims;

    // Random rational product distribution; small weights keep degeneracies
    // frequent.
    std::uniform_int_distribution<int> weight(0, 3);
    for (long d : dims) {
        std::vector<Rational> p;
        long total = 0;
        std::vector<int> w(d);
        for (auto& x : w) {
            x = weight(rng);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (int x : w) p.push_back(Rational(x, total));
        out.circuit.initial.probs.push_back(std::move(p));
    }

    std::vector<QMatrix> unitaries;
    for (long d : dims) unitaries.push_back(random_rational_unitary(d, rng));
    for (const auto& u : unitaries) out.circuit.initial.basis.per_qudit.push_back(projectors_of(u));

    // Joint distribution over packed register strings, evolved by the
    // planted permutations.
    const long total_dim = out.circuit.reg.total_dimension();
    std::vector<Rational> joint(total_dim, Rational(1));
    for (long x = 0; x < total_dim; ++x) {
        auto dits = unpack_dits(x, dims);
        for (std::size_t q = 0; q < n; ++q) joint[x] *= out.circuit.initial.probs[q][dits[q]];
    }

    for (int t = 0; t < n_gates; ++t) {
        const std::size_t support_size =
            1 + rng() % std::min<std::size_t>(static_cast<std::size_t>(max_support), n);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::size_t> support(all.begin(), all.begin() + support_size);

        SupportSplit split(out.circuit.reg, support);
        const long ds = split.support_dim(), dr = split.rest_dim();

        // True degeneracy blocks: level sets of the conditional weights.
        std::map<std::vector<Rational>, std::vector<long>> levels;
        for (long z = 0; z < ds; ++z) {
            std::vector<Rational> key(dr);
            for (long r = 0; r < dr; ++r) key[r] = joint[split.full_index(r, z)];
            levels[key].push_back(z);
        }
        // Planted partition: a random refinement of the true blocks.
        std::vector<std::vector<long>> blocks;
        for (auto& [key, members] : levels) {
            auto sub = random_partition(static_cast<long>(members.size()), rng, false);
            for (auto& s : sub) {
                std::vector<long> blk;
                for (long i : s) blk.push_back(members[i]);
                std::sort(blk.begin(), blk.end());
                blocks.push_back(std::move(blk));
            }
        }
        std::sort(blocks.begin(), blocks.end());

        std::vector<long> perm(ds);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        repair_product_images(blocks, perm, split.support_dims(), rng);

        std::vector<QMatrix> u_prev_parts, u_new_parts;
        for (std::size_t q : support) {
            u_prev_parts.push_back(unitaries[q]);
            u_new_parts.push_back(random_rational_unitary(dims[q], rng));
        }
        Gate gate = assemble_gate(support, tensor_unitary(u_new_parts), perm,
                                  block_diagonal_unitary(blocks, ds, rng),
                                  tensor_unitary(u_prev_parts));

        GateTruth truth;
        truth.blocks = blocks;
        truth.planted_perm.support = support;
        truth.planted_perm.map = perm;
        for (const auto& u : u_new_parts) truth.basis_after.push_back(projectors_of(u));
        out.truths.push_back(std::move(truth));
        out.circuit.gates.push_back(std::move(gate));

        for (std::size_t i = 0; i < support.size(); ++i) unitaries[support[i]] = u_new_parts[i];
        // p_t(y, z) = p_{t-1}(y, D^{-1}(z))
        std::vector<long> inv(ds);
        for (long z = 0; z < ds; ++z) inv[perm[z]] = z;
        std::vector<Rational> next(joint.size());
        for (long r = 0; r < dr; ++r)
            for (long z = 0; z < ds; ++z)
                next[split.full_index(r, z)] = joint[split.full_index(r, inv[z])];
        joint = std::move(next);
    }
    return out;
}

}  // namespace concord
