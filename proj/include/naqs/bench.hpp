#pragma once

#include "naqs/circuit.hpp"

#include <string>
#include <vector>

namespace naqs {

enum class Engine { SV, DM };

/// Timing record for one benchmark circuit. Wall times come from the
/// monotonic clock and cover simulation only (parsing and one warmup rep
/// are excluded).
struct BenchRecord {
    std::string name;
    int qubits = 0;
    std::size_t gates = 0;
    Engine engine = Engine::SV;
    int repetitions = 0;
    std::vector<double> times_ms; // one entry per timed repetition
    double median_ms = 0.0;
    double min_ms = 0.0;
    bool skipped = false;
    std::string reason; // set for skipped rows
};

/// Time one parsed circuit: one untimed warmup rep, then `repeat` timed
/// runs on a reused, reset state. Kernels are pinned to one worker while
/// timing so that the numbers measure the simulation, not the scheduler.
BenchRecord bench_circuit(const Circuit& c, Engine engine, int repeat);

/// Benchmark every *.qasm file in a directory (sorted by name). Files that
/// fail to parse or exceed engine limits become skipped records; the run
/// never aborts on a bad file. Throws ContractError when the directory has
/// no .qasm files at all.
std::vector<BenchRecord> bench_directory(const std::string& dir, Engine engine, int repeat);

} // namespace naqs
