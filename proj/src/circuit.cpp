#include "concord/circuit.hpp"

#include <json.hpp>

#include <set>

namespace concord {

using Json = nlohmann::ordered_json;

long pack_dits(const std::vector<long>& dits, const std::vector<long>& dims) {
    long idx = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) idx = idx * dims[j] + dits[j];
    return idx;
}

std::vector<long> unpack_dits(long index, const std::vector<long>& dims) {
    std::vector<long> dits(dims.size());
    for (std::size_t j = dims.size(); j-- > 0;) {
        dits[j] = index % dims[j];
        index /= dims[j];
    }
    return dits;
}

bool PermutationGate::is_bijection() const {
    std::set<long> image(map.begin(), map.end());
    return image.size() == map.size() && (map.empty() || (*image.begin() == 0 && *image.rbegin() == static_cast<long>(map.size()) - 1));
}

namespace {

void expect_keys(const Json& obj, const std::vector<std::string>& keys, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    std::vector<std::string> found;
    for (auto it = obj.begin(); it != obj.end(); ++it) found.push_back(it.key());
    if (found != keys) {
        std::string want;
        for (const auto& k : keys) want += (want.empty() ? "" : ",") + k;
        std::string got;
        for (const auto& k : found) got += (got.empty() ? "" : ",") + k;
        throw ParseError(where + ": fields must be exactly [" + want + "], got [" + got + "]");
    }
}

QMatrix parse_matrix(const Json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) throw ParseError(where + ": expected a non-empty matrix");
    const std::size_t n = rows.size();
    QMatrix m(n, rows[0].size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m.cols())
            throw ParseError(where + ": ragged matrix rows");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!rows[i][j].is_string()) throw ParseError(where + ": matrix entries must be strings");
            m(i, j) = parse_gaussian(rows[i][j].get<std::string>());
        }
    }
    return m;
}

Json matrix_to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void validate_local_basis(const LocalBasis& basis, const std::vector<long>& dims) {
    if (basis.per_qudit.size() != dims.size())
        throw ValidationError("basis: one projector list required per qudit");
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto d = static_cast<std::size_t>(dims[j]);
        const auto& list = basis.per_qudit[j];
        if (list.size() != d)
            throw ValidationError("basis: qudit " + std::to_string(j) + " needs " +
                                  std::to_string(d) + " projectors");
        QMatrix sum(d, d);
        for (std::size_t k = 0; k < list.size(); ++k) {
            const QMatrix& p = list[k];
            if (p.rows() != d || p.cols() != d)
                throw ValidationError("basis: projector dimension mismatch on qudit " + std::to_string(j));
            if (!is_hermitian(p))
                throw ValidationError("basis: projector not Hermitian on qudit " + std::to_string(j));
            if (p * p != p)
                throw ValidationError("basis: projector not idempotent on qudit " + std::to_string(j));
            if (p.trace() != GaussianRational(Rational(1)))
                throw ValidationError("basis: projector not rank-1 on qudit " + std::to_string(j));
            for (std::size_t l = 0; l < k; ++l)
                if (!(list[l] * p).is_zero())
                    throw ValidationError("basis: projectors not orthogonal on qudit " + std::to_string(j));
            sum = sum + p;
        }
        if (sum != QMatrix::identity(d))
            throw ValidationError("basis: projectors do not sum to identity on qudit " + std::to_string(j));
    }
}

void validate_gate(const Gate& gate, const QuditRegister& reg) {
    if (gate.support.empty()) throw ValidationError("gate: empty support");
    std::set<std::size_t> seen;
    long dim = 1;
    for (std::size_t q : gate.support) {
        if (q >= reg.size()) throw ValidationError("gate: support index out of range");
        if (!seen.insert(q).second) throw ValidationError("gate: repeated support index");
        dim *= reg.dims[q];
    }
    if (gate.radicand <= 0) throw ValidationError("gate: radicand must be positive");
    if (gate.matrix.rows() != static_cast<std::size_t>(dim) || !gate.matrix.is_square())
        throw ValidationError("gate: matrix dimension does not match support");
    for (std::size_t i = 0; i < gate.matrix.rows(); ++i)
        for (std::size_t j = 0; j < gate.matrix.cols(); ++j)
            if (!gate.matrix(i, j).is_gaussian_integer())
                throw ValidationError("gate: matrix entries must be Gaussian integers");
    QMatrix mm = gate.matrix.adjoint() * gate.matrix;
    QMatrix target = GaussianRational(Rational(gate.radicand)) * QMatrix::identity(dim);
    if (mm != target)
        throw ValidationError("gate: M^dag M != n I (not unitary for the given radicand)");
}

Circuit load_circuit(const std::string& document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("circuit document: ") + e.what());
    }
    expect_keys(doc, {"dims", "initial", "gates"}, "circuit");

    Circuit c;
    if (!doc["dims"].is_array() || doc["dims"].empty())
        throw ParseError("dims: expected a non-empty array");
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_integer()) throw ParseError("dims: expected integers");
        long v = d.get<long>();
        if (v < 2) throw ValidationError("dims: every qudit dimension must be >= 2");
        c.reg.dims.push_back(v);
    }

    const Json& init = doc["initial"];
    expect_keys(init, {"probs", "basis"}, "initial");
    if (!init["probs"].is_array() || init["probs"].size() != c.reg.size())
        throw ParseError("initial.probs: one probability list per qudit");
    for (std::size_t j = 0; j < c.reg.size(); ++j) {
        const auto& lst = init["probs"][j];
        if (!lst.is_array() || lst.size() != static_cast<std::size_t>(c.reg.dims[j]))
            throw ParseError("initial.probs: wrong arity on qudit " + std::to_string(j));
        std::vector<Rational> p;
        Rational sum(0);
        for (const auto& s : lst) {
            if (!s.is_string()) throw ParseError("initial.probs: entries must be strings");
            Rational v = parse_rational(s.get<std::string>());
            if (v.sign() < 0) throw ValidationError("initial.probs: negative probability");
            sum += v;
            p.push_back(std::move(v));
        }
        if (sum != 1) throw ValidationError("initial.probs: probabilities must sum to exactly 1");
        c.initial.probs.push_back(std::move(p));
    }
    if (!init["basis"].is_array() || init["basis"].size() != c.reg.size())
        throw ParseError("initial.basis: one projector list per qudit");
    for (std::size_t j = 0; j < c.reg.size(); ++j) {
        const auto& lst = init["basis"][j];
        if (!lst.is_array()) throw ParseError("initial.basis: expected projector arrays");
        std::vector<QMatrix> projectors;
        for (const auto& rows : lst)
            projectors.push_back(parse_matrix(rows, "initial.basis[" + std::to_string(j) + "]"));
        c.initial.basis.per_qudit.push_back(std::move(projectors));
    }
    validate_local_basis(c.initial.basis, c.reg.dims);

    if (!doc["gates"].is_array()) throw ParseError("gates: expected an array");
    for (const auto& g : doc["gates"]) {
        expect_keys(g, {"support", "radicand", "matrix"}, "gate");
        Gate gate;
        if (!g["support"].is_array()) throw ParseError("gate.support: expected an array");
        for (const auto& q : g["support"]) {
            if (!q.is_number_integer() || q.get<long>() < 0)
                throw ParseError("gate.support: expected non-negative integers");
            gate.support.push_back(q.get<std::size_t>());
        }
        if (g["radicand"].is_number_integer())
            gate.radicand = BigInt(g["radicand"].get<long long>());
        else if (g["radicand"].is_string())
            gate.radicand = BigInt{g["radicand"].get<std::string>()};
        else
            throw ParseError("gate.radicand: expected an integer");
        gate.matrix = parse_matrix(g["matrix"], "gate.matrix");
        validate_gate(gate, c.reg);
        c.gates.push_back(std::move(gate));
    }
    return c;
}

std::string serialize_circuit(const Circuit& circuit) {
    Json doc;
    doc["dims"] = circuit.reg.dims;
    Json probs = Json::array();
    for (const auto& plist : circuit.initial.probs) {
        Json l = Json::array();
        for (const auto& p : plist) l.push_back(to_string(p));
        probs.push_back(std::move(l));
    }
    Json basis = Json::array();
    for (const auto& qlist : circuit.initial.basis.per_qudit) {
        Json l = Json::array();
        for (const auto& proj : qlist) l.push_back(matrix_to_json(proj));
        basis.push_back(std::move(l));
    }
    doc["initial"] = Json{{"probs", std::move(probs)}, {"basis", std::move(basis)}};
    Json gates = Json::array();
    for (const auto& g : circuit.gates) {
        Json jg;
        jg["support"] = g.support;
        if (g.radicand <= BigInt(std::numeric_limits<long long>::max()))
            jg["radicand"] = g.radicand.convert_to<long long>();
        else
            jg["radicand"] = g.radicand.str();
        jg["matrix"] = matrix_to_json(g.matrix);
        gates.push_back(std::move(jg));
    }
    doc["gates"] = std::move(gates);
    return doc.dump();
}

QMatrix conjugate_projector(const Gate& gate, const QMatrix& p) {
    if (p.rows() != gate.matrix.rows() || p.cols() != gate.matrix.cols())
        throw ValidationError("conjugate_projector: dimension mismatch");
    QMatrix r = gate.matrix * p * gate.matrix.adjoint();
    const GaussianRational inv{Rational(BigInt(1), gate.radicand)};
    return inv * r;
}

SupportSplit::SupportSplit(const QuditRegister& reg, const std::vector<std::size_t>& support) {
    std::vector<bool> in_support(reg.size(), false);
    for (std::size_t q : support) {
        if (q >= reg.size()) throw std::out_of_range("SupportSplit: qudit index");
        if (in_support[q]) throw std::invalid_argument("SupportSplit: repeated qudit");
        in_support[q] = true;
    }
    std::vector<std::size_t> rest;
    std::vector<long> rdims;
    for (std::size_t q = 0; q < reg.size(); ++q)
        if (!in_support[q]) {
            rest.push_back(q);
            rdims.push_back(reg.dims[q]);
            rest_dim_ *= reg.dims[q];
        }
    for (std::size_t q : support) {
        sdims_.push_back(reg.dims[q]);
        support_dim_ *= reg.dims[q];
    }
    table_.resize(rest_dim_ * support_dim_);
    std::vector<long> digits(reg.size());
    for (long r = 0; r < rest_dim_; ++r) {
        const auto rd = rdims.empty() ? std::vector<long>{} : unpack_dits(r, rdims);
        for (std::size_t k = 0; k < rest.size(); ++k) digits[rest[k]] = rd[k];
        for (long s = 0; s < support_dim_; ++s) {
            const auto sd = unpack_dits(s, sdims_);
            for (std::size_t k = 0; k < support.size(); ++k) digits[support[k]] = sd[k];
            table_[r * support_dim_ + s] = pack_dits(digits, reg.dims);
        }
    }
}

QMatrix embed_projector(const LocalBasis& basis, const std::vector<std::size_t>& support,
                        const std::vector<std::vector<long>>& dit_strings) {
    long dim = 1;
    for (std::size_t q : support) {
        if (q >= basis.per_qudit.size()) throw std::out_of_range("embed_projector: qudit index");
        dim *= static_cast<long>(basis.per_qudit[q].size());
    }
    QMatrix sum(dim, dim);
    for (const auto& dits : dit_strings) {
        if (dits.size() != support.size()) throw std::out_of_range("embed_projector: dit string arity");
        QMatrix acc(1, 1);
        acc(0, 0) = GaussianRational(Rational(1));
        for (std::size_t k = 0; k < support.size(); ++k) {
            const auto& list = basis.per_qudit[support[k]];
            if (dits[k] < 0 || dits[k] >= static_cast<long>(list.size()))
                throw std::out_of_range("embed_projector: dit value out of range");
            acc = kron(acc, list[dits[k]]);
        }
        sum = sum + acc;
    }
    return sum;
}

}  // namespace concord
