#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "concord/generator.hpp"
#include "concord/oracle.hpp"
#include "concord/simulator.hpp"

using namespace concord;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
}

// MEASURE grammar: comma-separated `qudit:Z` (computational) or
// `qudit:FILE` (custom rational basis file).
MeasurementSpec parse_measure_spec(const std::string& text, const Circuit& circuit) {
    MeasurementSpec spec;
    if (text.empty()) return spec;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto colon = token.find(':');
        if (colon == std::string::npos)
            throw ParseError("measure spec token '" + token + "': expected qudit:Z or qudit:FILE");
        long qudit = -1;
        try {
            qudit = std::stol(token.substr(0, colon));
        } catch (...) {
            throw ParseError("measure spec token '" + token + "': bad qudit index");
        }
        if (qudit < 0 || qudit >= static_cast<long>(circuit.reg.size()))
            throw ParseError("measure spec token '" + token + "': qudit out of range");
        const std::string what = token.substr(colon + 1);
        MeasurementTarget target;
        target.qudit = static_cast<std::size_t>(qudit);
        const long d = circuit.reg.dims[qudit];
        if (what == "Z") {
            for (long k = 0; k < d; ++k) {
                QMatrix p(d, d);
                p(k, k) = GaussianRational(Rational(1));
                target.basis.push_back(std::move(p));
            }
        } else {
            // A JSON array of d projector matrices in the circuit format.
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(read_file(what));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("measure spec token '" + token + "': " + e.what());
            }
            if (!doc.is_array() || doc.size() != static_cast<std::size_t>(d))
                throw ParseError("measure spec token '" + token + "': need " + std::to_string(d) +
                                 " projectors");
            for (const auto& rows : doc) {
                QMatrix p(d, d);
                for (long i = 0; i < d; ++i)
                    for (long j = 0; j < d; ++j) p(i, j) = parse_gaussian(rows[i][j].get<std::string>());
                target.basis.push_back(std::move(p));
            }
            LocalBasis check;
            check.per_qudit.push_back(target.basis);
            validate_local_basis(check, {d});
        }
        spec.targets.push_back(std::move(target));
    }
    return spec;
}

std::string marginals_to_json(const std::map<std::string, Rational>& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [key, p] : m) {
        os << (first ? "" : ",") << "\"" << key << "\":\"" << to_string(p) << "\"";
        first = false;
    }
    os << "}";
    return os.str();
}

int herald_exit(int t, const std::string& witness) {
    std::cout << "Local-basis ambiguity at time step " << t << ": " << witness << "\n";
    return 2;
}

int run(int argc, char** argv) {
    CLI::App app{"concord: exact classical simulator for rationally-concordant circuits"};
    app.require_subcommand(1);

    std::string circuit_path, measure, out_path, qudits_spec;
    long shots = 0;
    std::uint64_t seed = 0;
    int threads = 0;
    long gate_index = 0;
    int n_gates = 8, max_support = 2;
    bool with_exact = false;
    std::string strategy_name = "auto";

    auto add_strategy = [&](CLI::App* cmd) {
        cmd->add_option("--strategy", strategy_name, "lbf | clifford12 | auto")
            ->check(CLI::IsMember({"lbf", "clifford12", "auto"}));
    };
    auto strategy = [&]() {
        if (strategy_name == "lbf") return Strategy::Lbf;
        if (strategy_name == "clifford12") return Strategy::Clifford12;
        return Strategy::Auto;
    };

    CLI::App* simulate = app.add_subcommand("simulate", "sample measurement outcomes");
    simulate->add_option("--circuit", circuit_path)->required();
    simulate->add_option("--shots", shots)->required();
    simulate->add_option("--seed", seed);
    simulate->add_option("--measure", measure);
    simulate->add_option("--threads", threads, "shot-level parallelism");
    simulate->add_flag("--exact", with_exact, "include exact probabilities");
    add_strategy(simulate);

    CLI::App* update = app.add_subcommand("update-rule", "derive and dump the update rule");
    update->add_option("--circuit", circuit_path)->required();
    update->add_option("-o,--output", out_path);
    add_strategy(update);

    CLI::App* marginals = app.add_subcommand("marginals", "exact output distribution");
    marginals->add_option("--circuit", circuit_path)->required();
    marginals->add_option("--measure", measure);
    add_strategy(marginals);

    CLI::App* verify = app.add_subcommand("verify", "dense-oracle cross-check");
    verify->add_option("--circuit", circuit_path)->required();
    add_strategy(verify);

    CLI::App* lbf_cmd = app.add_subcommand("lbf", "probe one gate with the local-basis finder");
    lbf_cmd->add_option("--circuit", circuit_path)->required();
    lbf_cmd->add_option("--gate", gate_index)->required();

    CLI::App* gen = app.add_subcommand("gen", "synthesise a concordant fixture circuit");
    gen->add_option("--qudits", qudits_spec, "comma-separated dimensions, e.g. 2,2,3")->required();
    gen->add_option("--seed", seed);
    gen->add_option("--gates", n_gates);
    gen->add_option("--max-support", max_support);
    gen->add_option("-o,--output", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        Circuit c = load_circuit(read_file(circuit_path));
        MeasurementSpec spec =
            measure.empty() ? computational_measurement(c.reg) : parse_measure_spec(measure, c);
        BuildResult rule = build_update_rule(c, strategy());
        if (std::holds_alternative<HeraldedFailure>(rule)) {
            const auto& h = std::get<HeraldedFailure>(rule);
            return herald_exit(h.t, h.witness);
        }
        SampleReport report =
            run_shots_with_rule(std::get<UpdateRule>(rule), c.initial, spec, shots, seed, threads);
        if (with_exact)
            report.exact = exact_marginals_with_rule(std::get<UpdateRule>(rule), c.initial, spec);
        std::cout << report_to_json(report) << "\n";
        return 0;
    }
    if (update->parsed()) {
        Circuit c = load_circuit(read_file(circuit_path));
        BuildResult rule = build_update_rule(c, strategy());
        if (std::holds_alternative<HeraldedFailure>(rule)) {
            const auto& h = std::get<HeraldedFailure>(rule);
            return herald_exit(h.t, h.witness);
        }
        std::string dump = dump_update_rule(std::get<UpdateRule>(rule));
        if (out_path.empty())
            std::cout << dump;
        else
            write_file(out_path, dump);
        return 0;
    }
    if (marginals->parsed()) {
        Circuit c = load_circuit(read_file(circuit_path));
        MeasurementSpec spec =
            measure.empty() ? computational_measurement(c.reg) : parse_measure_spec(measure, c);
        auto result = exact_marginals(c, spec, strategy());
        if (std::holds_alternative<HeraldedFailure>(result)) {
            const auto& h = std::get<HeraldedFailure>(result);
            return herald_exit(h.t, h.witness);
        }
        std::cout << marginals_to_json(std::get<std::map<std::string, Rational>>(result)) << "\n";
        return 0;
    }
    if (verify->parsed()) {
        Circuit c = load_circuit(read_file(circuit_path));
        BuildResult build = build_update_rule(c, strategy());
        if (std::holds_alternative<HeraldedFailure>(build)) {
            const auto& h = std::get<HeraldedFailure>(build);
            return herald_exit(h.t, h.witness);
        }
        const UpdateRule& rule = std::get<UpdateRule>(build);

        // Replay the dense evolution, checking concordance in the
        // simulator's basis after every gate.
        DenseEvolution dense = dense_initial(c);
        LocalBasis basis = c.initial.basis;
        bool all_ok = true;
        for (std::size_t t = 0; t < c.gates.size(); ++t) {
            dense = evolve(dense, c.gates[t], c.reg);
            const auto& step = rule.steps[t];
            for (std::size_t k = 0; k < step.support.size(); ++k)
                basis.per_qudit[step.support[k]] = step.new_basis[k];
            bool ok = check_concordant(dense, basis);
            std::cout << "step " << t << ": " << (ok ? "concordant" : "NOT CONCORDANT") << "\n";
            all_ok &= ok;
        }
        MeasurementSpec spec = computational_measurement(c.reg);
        auto fast = exact_marginals_with_rule(rule, c.initial, spec);
        auto slow = dense_marginals(dense, spec);
        bool equal = fast == slow;
        std::cout << "marginals: " << (equal ? "equal" : "DIFFER") << "\n";
        all_ok &= equal;
        if (!all_ok) throw PromiseViolation("verification failed");
        std::cout << "ok\n";
        return 0;
    }
    if (lbf_cmd->parsed()) {
        Circuit c = load_circuit(read_file(circuit_path));
        if (gate_index < 0 || gate_index >= static_cast<long>(c.gates.size()))
            throw ValidationError("gate index out of range");
        Circuit prefix = c;
        prefix.gates.assign(c.gates.begin(), c.gates.begin() + gate_index);
        BuildResult built = build_update_rule(prefix, Strategy::Lbf);
        if (std::holds_alternative<HeraldedFailure>(built)) {
            const auto& h = std::get<HeraldedFailure>(built);
            return herald_exit(h.t, h.witness);
        }
        LbfInput input = make_lbf_input(c.gates[gate_index],
                                        std::get<UpdateRule>(built).final_basis, c.reg);
        LbfOutcome outcome = run_lbf(input);
        if (!lbf_succeeded(outcome)) {
            const auto& w = std::get<LbfIncompatible>(outcome).witness;
            std::ostringstream os;
            auto subset_str = [](const CandidateProjector& cp) {
                std::string s = "{";
                for (std::size_t i = 0; i < cp.subset.size(); ++i)
                    s += (i ? "," : "") + std::to_string(cp.subset[i]);
                return s + "}";
            };
            os << "incompatible X_k-unique bases for candidates " << subset_str(w.k) << " and "
               << subset_str(w.k_prime) << " on support qudit " << w.qudit;
            return herald_exit(static_cast<int>(gate_index), os.str());
        }
        const auto& s = std::get<LbfSuccess>(outcome);
        UpdateRule one;
        UpdateStep step;
        step.t = static_cast<int>(gate_index);
        step.support = c.gates[gate_index].support;
        step.permutation = s.permutation;
        step.new_basis = s.basis.per_qudit;
        one.steps.push_back(step);
        one.final_basis = std::get<UpdateRule>(built).final_basis;
        for (std::size_t k = 0; k < step.support.size(); ++k)
            one.final_basis.per_qudit[step.support[k]] = step.new_basis[k];
        std::cout << dump_update_rule(one);
        std::cout << "partition:";
        for (const auto& block : s.partition) {
            std::cout << " {";
            for (std::size_t i = 0; i < block.size(); ++i) std::cout << (i ? "," : "") << block[i];
            std::cout << "}";
        }
        std::cout << "\n";
        return 0;
    }
    if (gen->parsed()) {
        std::vector<long> dims;
        std::stringstream ss(qudits_spec);
        std::string token;
        while (std::getline(ss, token, ',')) {
            long d = 0;
            try {
                d = std::stol(token);
            } catch (...) {
                throw ParseError("bad qudit dimension: '" + token + "'");
            }
            if (d < 2) throw ValidationError("qudit dimensions must be >= 2");
            dims.push_back(d);
        }
        if (dims.empty()) throw ParseError("empty qudit spec");
        auto generated = generate_concordant_circuit(dims, n_gates, max_support, seed);
        write_file(out_path, serialize_circuit(generated.circuit));
        std::cout << "wrote " << out_path << " (" << generated.circuit.gates.size() << " gates)\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const PromiseViolation& e) {
        std::cerr << "promise violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
