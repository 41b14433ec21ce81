#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "concord/circuit.hpp"
#include "concord/lbf.hpp"

namespace concord {

// The derived equivalent circuit: per time step a dit-string permutation on
// the gate support plus the local-basis replacement there.
struct UpdateStep {
    int t = 0;
    std::vector<std::size_t> support;
    PermutationGate permutation;
    std::vector<std::vector<QMatrix>> new_basis;  // per support qudit
};

struct UpdateRule {
    std::vector<UpdateStep> steps;
    LocalBasis final_basis;
};

struct HeraldedFailure {
    int t = 0;
    std::string witness;
};

using BuildResult = std::variant<UpdateRule, HeraldedFailure>;

enum class Strategy { Lbf, Clifford12, Auto };

BuildResult build_update_rule(const Circuit& circuit, Strategy strategy = Strategy::Auto,
                              const LbfOptions& options = {});

struct Trajectory {
    std::vector<long> s_in, s_out;
};

struct MeasurementTarget {
    std::size_t qudit = 0;
    std::vector<QMatrix> basis;  // complete rank-1 list
};

struct MeasurementSpec {
    std::vector<MeasurementTarget> targets;
};

MeasurementSpec computational_measurement(const QuditRegister& reg);

struct SampleReport {
    long shots = 0;
    std::map<std::string, long> counts;
    std::uint64_t seed = 0;
    std::optional<std::map<std::string, Rational>> exact;
};

// Uniform random bits from a seeded engine; the only randomness primitive
// in the simulator.
class BitSource {
  public:
    explicit BitSource(std::uint64_t seed) : eng_(seed) {}
    bool next_bit() {
        if (avail_ == 0) {
            buf_ = eng_();
            avail_ = 64;
        }
        bool b = buf_ & 1;
        buf_ >>= 1;
        --avail_;
        return b;
    }

  private:
    std::mt19937_64 eng_;
    std::uint64_t buf_ = 0;
    int avail_ = 0;
};

// Exact sampling from a rational distribution: refine a dyadic interval bit
// by bit until it lies inside one cumulative bucket.  No floating point.
long sample_exact_discrete(const std::vector<Rational>& probs, BitSource& bits);

Trajectory sample_trajectory(const UpdateRule& rule, const InitialState& initial, BitSource& bits);

// Exact per-target outcome distributions for one trajectory endpoint.
std::vector<std::vector<Rational>> measure_probabilities(const UpdateRule& rule,
                                                         const std::vector<long>& s_out,
                                                         const MeasurementSpec& spec);

// Monte-Carlo sampling against a prebuilt rule.  Shots are independent
// (per-shot derived seeds), so the OpenMP path merges thread-local counts
// into a report identical to the serial reference.
SampleReport run_shots_with_rule(const UpdateRule& rule, const InitialState& initial,
                                 const MeasurementSpec& spec, long shots, std::uint64_t seed,
                                 int threads = 0);
SampleReport run_shots_with_rule_reference(const UpdateRule& rule, const InitialState& initial,
                                           const MeasurementSpec& spec, long shots,
                                           std::uint64_t seed);

std::variant<SampleReport, HeraldedFailure> run_shots(const Circuit& circuit,
                                                      const MeasurementSpec& spec, long shots,
                                                      std::uint64_t seed,
                                                      Strategy strategy = Strategy::Auto,
                                                      int threads = 0);

// Exhaustive enumeration over all initial dit strings; exact probabilities
// summing to exactly 1.
std::map<std::string, Rational> exact_marginals_with_rule(const UpdateRule& rule,
                                                          const InitialState& initial,
                                                          const MeasurementSpec& spec,
                                                          long enumeration_cap = 1 << 20);
std::variant<std::map<std::string, Rational>, HeraldedFailure> exact_marginals(
    const Circuit& circuit, const MeasurementSpec& spec, Strategy strategy = Strategy::Auto,
    long enumeration_cap = 1 << 20);

std::string outcome_key(const std::vector<long>& outcome);

std::string dump_update_rule(const UpdateRule& rule);
std::string report_to_json(const SampleReport& report);

// An update rule with the intermediate step bases cleared; trajectories and
// measurements only ever consult the final basis.
UpdateRule strip_intermediate_bases(UpdateRule rule);

}  // namespace concord
