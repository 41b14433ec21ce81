// Compares the OpenMP shot-sampling kernel against the serial reference on
// a generated fixture circuit and checks that the reports are identical.
#include <omp.h>

#include <chrono>
#include <functional>
#include <iostream>

#include "concord/generator.hpp"
#include "concord/simulator.hpp"

using namespace concord;

namespace {

long run_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    long shots = argc > 1 ? std::stol(argv[1]) : 200000;
    auto generated = generate_concordant_circuit({2, 2, 2, 3, 2}, 10, 2, 42);
    const Circuit& circuit = generated.circuit;

    BuildResult built = build_update_rule(circuit, Strategy::Lbf);
    if (std::holds_alternative<HeraldedFailure>(built)) {
        std::cerr << "fixture heralded, adjust the seed\n";
        return 1;
    }
    const UpdateRule& rule = std::get<UpdateRule>(built);
    MeasurementSpec spec = computational_measurement(circuit.reg);

    SampleReport serial, parallel;
    long serial_ms = run_ms([&] {
        serial = run_shots_with_rule_reference(rule, circuit.initial, spec, shots, 7);
    });
    long parallel_ms = run_ms([&] {
        parallel = run_shots_with_rule(rule, circuit.initial, spec, shots, 7, 0);
    });

    std::cout << "shots: " << shots << "\n";
    std::cout << "serial reference: " << serial_ms << " ms\n";
    std::cout << "openmp (" << omp_get_max_threads() << " threads): " << parallel_ms << " ms\n";
    if (serial.counts != parallel.counts || serial.shots != parallel.shots) {
        std::cout << "MISMATCH between serial and parallel reports\n";
        return 1;
    }
    std::cout << "reports identical\n";
    return 0;
}
