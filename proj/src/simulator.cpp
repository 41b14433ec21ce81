#include "concord/simulator.hpp"

#include <omp.h>

#include <sstream>

#include "concord/cliffordsym.hpp"

namespace concord {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t shot_seed(std::uint64_t base, long shot) {
    return splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(shot) + 1));
}

std::string describe_witness(const IncompatibilityWitness& w) {
    auto subset_str = [](const CandidateProjector& c) {
        std::string s = "{";
        for (std::size_t i = 0; i < c.subset.size(); ++i)
            s += (i ? "," : "") + std::to_string(c.subset[i]);
        return s + "}";
    };
    return "incompatible X_k-unique bases for candidates " + subset_str(w.k) + " and " +
           subset_str(w.k_prime) + " on support qudit " + std::to_string(w.qudit);
}

BuildResult build_lbf_rule(const Circuit& circuit, const LbfOptions& options) {
    UpdateRule rule;
    LocalBasis basis = circuit.initial.basis;
    for (std::size_t t = 0; t < circuit.gates.size(); ++t) {
        LbfOptions per_gate = options;
        per_gate.seed = splitmix64(options.seed ^ (0xabcdull + t));
        LbfInput input = make_lbf_input(circuit.gates[t], basis, circuit.reg);
        LbfOutcome outcome = run_lbf(input, per_gate);
        if (!lbf_succeeded(outcome))
            return HeraldedFailure{static_cast<int>(t),
                                   describe_witness(std::get<LbfIncompatible>(outcome).witness)};
        auto& success = std::get<LbfSuccess>(outcome);
        UpdateStep step;
        step.t = static_cast<int>(t);
        step.support = circuit.gates[t].support;
        step.permutation = success.permutation;
        step.new_basis = success.basis.per_qudit;
        for (std::size_t k = 0; k < step.support.size(); ++k)
            basis.per_qudit[step.support[k]] = step.new_basis[k];
        rule.steps.push_back(std::move(step));
    }
    rule.final_basis = std::move(basis);
    return rule;
}

// Corollary-2 lane: qubits only, gates on at most two qubits, local basis
// frozen at L_0; each gate must act as a permutation of the diagnosed
// degeneracy blocks.
BuildResult build_clifford12_rule(const Circuit& circuit) {
    const std::size_t n = circuit.reg.size();
    for (long d : circuit.reg.dims)
        if (d != 2) throw PromiseViolation("clifford12 strategy requires an all-qubit register");
    for (const auto& g : circuit.gates)
        if (g.support.size() > 2)
            throw PromiseViolation("clifford12 strategy requires 1-2 qubit gates");

    DiagonalProductState diag;
    for (const auto& p : circuit.initial.probs) diag.q.push_back(p[0] - p[1]);

    ReversibleClassicalCircuit history;
    history.qubits = n;

    UpdateRule rule;
    for (std::size_t t = 0; t < circuit.gates.size(); ++t) {
        const Gate& gate = circuit.gates[t];
        std::vector<std::vector<QMatrix>> prev;
        std::vector<long> dims;
        for (std::size_t q : gate.support) {
            prev.push_back(circuit.initial.basis.per_qudit[q]);
            dims.push_back(2);
        }
        LocalBasis prev_basis;
        prev_basis.per_qudit = prev;
        std::vector<std::size_t> local_support(gate.support.size());
        for (std::size_t i = 0; i < local_support.size(); ++i) local_support[i] = i;
        const long d = gate.dim();

        std::vector<QMatrix> products(d), images(d);
        for (long x = 0; x < d; ++x) {
            products[x] = embed_projector(prev_basis, local_support, {unpack_dits(x, dims)});
            images[x] = conjugate_projector(gate, products[x]);
        }

        // Try the direct permutation action first; fall back to the
        // diagnosed degeneracy blocks.
        PermutationGate perm;
        perm.support = gate.support;
        perm.map.assign(d, -1);
        bool direct = true;
        for (long x = 0; x < d && direct; ++x) {
            direct = false;
            for (long y = 0; y < d; ++y)
                if (images[x] == products[y]) {
                    perm.map[x] = y;
                    direct = true;
                    break;
                }
        }
        if (!direct) {
            auto blocks = diagnose_degeneracy_12(diag, history, gate.support);
            std::vector<bool> taken(d, false);
            std::fill(perm.map.begin(), perm.map.end(), -1);
            for (const auto& block : blocks) {
                QMatrix image(d, d);
                for (long x : block) image = image + images[x];
                std::vector<long> targets;
                for (long y = 0; y < d; ++y) {
                    if (taken[y]) continue;
                    if (image * products[y] == products[y]) targets.push_back(y);
                }
                QMatrix sum(d, d);
                for (long y : targets) sum = sum + products[y];
                if (targets.size() != block.size() || sum != image)
                    throw PromiseViolation(
                        "gate is not a permutation of the diagnosed degeneracy blocks");
                for (std::size_t i = 0; i < block.size(); ++i) {
                    perm.map[block[i]] = targets[i];
                    taken[targets[i]] = true;
                }
            }
        }
        if (!perm.is_bijection()) throw PromiseViolation("clifford12: derived map is not a bijection");
        history.append(permutation_word(perm.map, gate.support, n));

        UpdateStep step;
        step.t = static_cast<int>(t);
        step.support = gate.support;
        step.permutation = perm;
        step.new_basis = prev;  // the basis never changes on this lane
        rule.steps.push_back(std::move(step));
    }
    rule.final_basis = circuit.initial.basis;
    return rule;
}

}  // namespace

BuildResult build_update_rule(const Circuit& circuit, Strategy strategy, const LbfOptions& options) {
    switch (strategy) {
        case Strategy::Lbf:
            return build_lbf_rule(circuit, options);
        case Strategy::Clifford12:
            return build_clifford12_rule(circuit);
        case Strategy::Auto: {
            bool qubits_only = true;
            for (long d : circuit.reg.dims) qubits_only &= (d == 2);
            bool small_gates = true;
            for (const auto& g : circuit.gates) small_gates &= (g.support.size() <= 2);
            if (qubits_only && small_gates) {
                try {
                    return build_clifford12_rule(circuit);
                } catch (const PromiseViolation&) {
                    // Gates do not reduce to classical permutations in the
                    // frozen frame; derive bases gate by gate instead.
                }
            }
            return build_lbf_rule(circuit, options);
        }
    }
    throw std::logic_error("unreachable strategy");
}

MeasurementSpec computational_measurement(const QuditRegister& reg) {
    MeasurementSpec spec;
    for (std::size_t q = 0; q < reg.size(); ++q) {
        MeasurementTarget t;
        t.qudit = q;
        const long d = reg.dims[q];
        for (long k = 0; k < d; ++k) {
            QMatrix p(d, d);
            p(k, k) = GaussianRational(Rational(1));
            t.basis.push_back(std::move(p));
        }
        spec.targets.push_back(std::move(t));
    }
    return spec;
}

long sample_exact_discrete(const std::vector<Rational>& probs, BitSource& bits) {
    // Cumulative bucket boundaries.
    std::vector<Rational> cum(probs.size() + 1, Rational(0));
    for (std::size_t i = 0; i < probs.size(); ++i) cum[i + 1] = cum[i] + probs[i];
    // Dyadic interval [a, a+1) / 2^k intersected against the buckets.
    BigInt a = 0;
    Rational pow(1);  // 2^-k
    for (;;) {
        Rational lo = Rational(a) * pow;
        Rational hi = Rational(a + 1) * pow;
        for (std::size_t i = 0; i < probs.size(); ++i)
            if (cum[i] <= lo && hi <= cum[i + 1]) return static_cast<long>(i);
        a <<= 1;
        if (bits.next_bit()) a += 1;
        pow /= 2;
    }
}

Trajectory sample_trajectory(const UpdateRule& rule, const InitialState& initial, BitSource& bits) {
    Trajectory tr;
    for (const auto& probs : initial.probs) tr.s_in.push_back(sample_exact_discrete(probs, bits));
    tr.s_out = tr.s_in;
    for (const auto& step : rule.steps) {
        std::vector<long> dits, dims;
        for (std::size_t q : step.support) {
            dits.push_back(tr.s_out[q]);
            dims.push_back(static_cast<long>(rule.final_basis.per_qudit[q].size()));
        }
        long packed = pack_dits(dits, dims);
        auto image = unpack_dits(step.permutation.map[packed], dims);
        for (std::size_t k = 0; k < step.support.size(); ++k) tr.s_out[step.support[k]] = image[k];
    }
    return tr;
}

std::vector<std::vector<Rational>> measure_probabilities(const UpdateRule& rule,
                                                         const std::vector<long>& s_out,
                                                         const MeasurementSpec& spec) {
    std::vector<std::vector<Rational>> out;
    for (const auto& target : spec.targets) {
        if (target.qudit >= rule.final_basis.per_qudit.size())
            throw ValidationError("measurement target out of range");
        const QMatrix& state_proj = rule.final_basis.per_qudit[target.qudit][s_out[target.qudit]];
        std::vector<Rational> dist;
        Rational sum(0);
        for (const QMatrix& b : target.basis) {
            GaussianRational p = (b * state_proj).trace();
            if (!p.im.is_zero()) throw std::logic_error("complex measurement probability");
            sum += p.re;
            dist.push_back(p.re);
        }
        if (sum != 1) throw ValidationError("measurement basis is not complete");
        out.push_back(std::move(dist));
    }
    return out;
}

std::string outcome_key(const std::vector<long>& outcome) {
    std::string key;
    for (long r : outcome) {
        if (r < 0 || r > 9) throw std::logic_error("outcome digit out of range");
        key.push_back(static_cast<char>('0' + r));
    }
    return key;
}

namespace {

std::string sample_one_shot(const UpdateRule& rule, const InitialState& initial,
                            const MeasurementSpec& spec, std::uint64_t seed) {
    BitSource bits(seed);
    Trajectory tr = sample_trajectory(rule, initial, bits);
    auto dists = measure_probabilities(rule, tr.s_out, spec);
    std::vector<long> outcome;
    outcome.reserve(dists.size());
    for (const auto& dist : dists) outcome.push_back(sample_exact_discrete(dist, bits));
    return outcome_key(outcome);
}

}  // namespace

SampleReport run_shots_with_rule_reference(const UpdateRule& rule, const InitialState& initial,
                                           const MeasurementSpec& spec, long shots,
                                           std::uint64_t seed) {
    SampleReport report;
    report.shots = shots;
    report.seed = seed;
    for (long s = 0; s < shots; ++s)
        ++report.counts[sample_one_shot(rule, initial, spec, shot_seed(seed, s))];
    return report;
}

SampleReport run_shots_with_rule(const UpdateRule& rule, const InitialState& initial,
                                 const MeasurementSpec& spec, long shots, std::uint64_t seed,
                                 int threads) {
    SampleReport report;
    report.shots = shots;
    report.seed = seed;
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel
    {
        std::map<std::string, long> local;
#pragma omp for schedule(static)
        for (long s = 0; s < shots; ++s) ++local[sample_one_shot(rule, initial, spec, shot_seed(seed, s))];
#pragma omp critical
        for (const auto& [key, count] : local) report.counts[key] += count;
    }
    return report;
}

std::variant<SampleReport, HeraldedFailure> run_shots(const Circuit& circuit,
                                                      const MeasurementSpec& spec, long shots,
                                                      std::uint64_t seed, Strategy strategy,
                                                      int threads) {
    BuildResult rule = build_update_rule(circuit, strategy);
    if (std::holds_alternative<HeraldedFailure>(rule)) return std::get<HeraldedFailure>(rule);
    return run_shots_with_rule(std::get<UpdateRule>(rule), circuit.initial, spec, shots, seed,
                               threads);
}

std::map<std::string, Rational> exact_marginals_with_rule(const UpdateRule& rule,
                                                          const InitialState& initial,
                                                          const MeasurementSpec& spec,
                                                          long enumeration_cap) {
    std::vector<long> dims;
    for (const auto& q : rule.final_basis.per_qudit) dims.push_back(static_cast<long>(q.size()));
    long total = 1;
    for (long d : dims) {
        total *= d;
        if (total > enumeration_cap)
            throw TooLarge("exact marginal enumeration exceeds the configured cap");
    }

    std::map<std::string, Rational> out;
    for (long s = 0; s < total; ++s) {
        auto s_in = unpack_dits(s, dims);
        Rational p(1);
        for (std::size_t q = 0; q < dims.size(); ++q) p *= initial.probs[q][s_in[q]];
        if (p.is_zero()) continue;
        std::vector<long> s_out = s_in;
        for (const auto& step : rule.steps) {
            std::vector<long> dits, sdims;
            for (std::size_t q : step.support) {
                dits.push_back(s_out[q]);
                sdims.push_back(dims[q]);
            }
            auto image = unpack_dits(step.permutation.map[pack_dits(dits, sdims)], sdims);
            for (std::size_t k = 0; k < step.support.size(); ++k) s_out[step.support[k]] = image[k];
        }
        auto dists = measure_probabilities(rule, s_out, spec);
        // Joint outcome enumeration: measurement outcomes on distinct
        // targets are independent for one trajectory.
        std::vector<long> outcome(dists.size(), 0);
        for (;;) {
            Rational q = p;
            for (std::size_t t = 0; t < dists.size(); ++t) q *= dists[t][outcome[t]];
            if (!q.is_zero()) out[outcome_key(outcome)] += q;
            std::size_t t = dists.size();
            while (t-- > 0) {
                if (++outcome[t] < static_cast<long>(dists[t].size())) break;
                outcome[t] = 0;
                if (t == 0) goto next_string;
            }
            if (dists.empty()) break;
        }
    next_string:;
    }
    Rational sum(0);
    for (const auto& [k, v] : out) sum += v;
    if (sum != 1) throw std::logic_error("exact marginals do not sum to 1");
    return out;
}

std::variant<std::map<std::string, Rational>, HeraldedFailure> exact_marginals(
    const Circuit& circuit, const MeasurementSpec& spec, Strategy strategy, long enumeration_cap) {
    BuildResult rule = build_update_rule(circuit, strategy);
    if (std::holds_alternative<HeraldedFailure>(rule)) return std::get<HeraldedFailure>(rule);
    return exact_marginals_with_rule(std::get<UpdateRule>(rule), circuit.initial, spec,
                                     enumeration_cap);
}

std::string dump_update_rule(const UpdateRule& rule) {
    std::ostringstream os;
    for (const auto& step : rule.steps) {
        os << "step " << step.t << " support [";
        for (std::size_t i = 0; i < step.support.size(); ++i)
            os << (i ? "," : "") << step.support[i];
        os << "]\n  D:";
        for (std::size_t x = 0; x < step.permutation.map.size(); ++x)
            os << " " << x << "->" << step.permutation.map[x];
        os << "\n";
        for (std::size_t k = 0; k < step.new_basis.size(); ++k) {
            os << "  basis qudit " << step.support[k] << ":";
            for (const auto& p : step.new_basis[k]) {
                os << " [";
                for (std::size_t i = 0; i < p.rows(); ++i)
                    for (std::size_t j = 0; j < p.cols(); ++j)
                        os << to_string(p(i, j)) << ((i + 1 == p.rows() && j + 1 == p.cols()) ? "" : " ");
                os << "]";
            }
            os << "\n";
        }
    }
    os << "final basis\n";
    for (std::size_t q = 0; q < rule.final_basis.per_qudit.size(); ++q) {
        os << "  qudit " << q << ":";
        for (const auto& p : rule.final_basis.per_qudit[q]) {
            os << " [";
            for (std::size_t i = 0; i < p.rows(); ++i)
                for (std::size_t j = 0; j < p.cols(); ++j)
                    os << to_string(p(i, j)) << ((i + 1 == p.rows() && j + 1 == p.cols()) ? "" : " ");
            os << "]";
        }
        os << "\n";
    }
    return os.str();
}

std::string report_to_json(const SampleReport& report) {
    std::ostringstream os;
    os << "{\"shots\":" << report.shots << ",\"seed\":" << report.seed << ",\"counts\":{";
    bool first = true;
    for (const auto& [key, count] : report.counts) {
        os << (first ? "" : ",") << "\"" << key << "\":" << count;
        first = false;
    }
    os << "}";
    if (report.exact) {
        os << ",\"exact\":{";
        first = true;
        for (const auto& [key, p] : *report.exact) {
            os << (first ? "" : ",") << "\"" << key << "\":\"" << to_string(p) << "\"";
            first = false;
        }
        os << "}";
    }
    os << "}";
    return os.str();
}

UpdateRule strip_intermediate_bases(UpdateRule rule) {
    for (auto& step : rule.steps) step.new_basis.clear();
    return rule;
}

}  // namespace concord
