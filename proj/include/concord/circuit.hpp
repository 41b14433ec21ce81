#pragma once

#include <string>
#include <vector>

#include "concord/matrix.hpp"
#include "concord/rational.hpp"

namespace concord {

struct QuditRegister {
    std::vector<long> dims;  // every d_j >= 2

    std::size_t size() const { return dims.size(); }
    long total_dimension() const {
        long t = 1;
        for (long d : dims) t *= d;
        return t;
    }
};

// Mixed-radix dit strings: qudit 0 is the most significant digit.
long pack_dits(const std::vector<long>& dits, const std::vector<long>& dims);
std::vector<long> unpack_dits(long index, const std::vector<long>& dims);

// A unitary G = M / sqrt(n) on a qudit subset: M is a Gaussian-integer
// matrix with M^dag M = n I exactly.
struct Gate {
    std::vector<std::size_t> support;
    QMatrix matrix;
    BigInt radicand;

    long dim() const { return static_cast<long>(matrix.rows()); }
    std::vector<long> support_dims(const QuditRegister& reg) const {
        std::vector<long> d;
        for (auto q : support) d.push_back(reg.dims[q]);
        return d;
    }
};

// Per-qudit complete ordered sets of rank-1 rational projectors.  The local
// rotations L themselves are never stored.
struct LocalBasis {
    std::vector<std::vector<QMatrix>> per_qudit;
};

// rho_0 = tensor_j sum_k p_k^(j) pi_k^(j)
struct InitialState {
    LocalBasis basis;
    std::vector<std::vector<Rational>> probs;
};

struct PermutationGate {
    std::vector<std::size_t> support;
    std::vector<long> map;  // image of each packed dit string

    bool is_bijection() const;
};

struct Circuit {
    QuditRegister reg;
    InitialState initial;
    std::vector<Gate> gates;
};

// Text format is canonical JSON with a fixed field order; unknown fields are
// rejected and every invariant is verified exactly on load.
Circuit load_circuit(const std::string& document);
std::string serialize_circuit(const Circuit& circuit);

// M p M^dag / n: exactly rational, the radicand cancels.
QMatrix conjugate_projector(const Gate& gate, const QMatrix& p);

// Tensor product of selected per-qudit basis projectors, summed over the
// given dit strings of the support.
QMatrix embed_projector(const LocalBasis& basis, const std::vector<std::size_t>& support,
                        const std::vector<std::vector<long>>& dit_strings);

void validate_local_basis(const LocalBasis& basis, const std::vector<long>& dims);
void validate_gate(const Gate& gate, const QuditRegister& reg);

// Index bookkeeping for a register split into a support (in the given
// order) and the rest (ascending qudit order).
class SupportSplit {
  public:
    SupportSplit(const QuditRegister& reg, const std::vector<std::size_t>& support);

    long rest_dim() const { return rest_dim_; }
    long support_dim() const { return support_dim_; }
    const std::vector<long>& support_dims() const { return sdims_; }
    long full_index(long rest, long sup) const { return table_[rest * support_dim_ + sup]; }

  private:
    long rest_dim_ = 1, support_dim_ = 1;
    std::vector<long> sdims_;
    std::vector<long> table_;
};

}  // namespace concord
