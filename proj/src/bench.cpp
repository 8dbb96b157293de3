#include "naqs/bench.hpp"

#include "naqs/densitymatrix.hpp"
#include "naqs/qasm.hpp"
#include "naqs/statevector.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace naqs {

namespace {

// Timings run single-threaded: the engines' parallel contract is about
// results, and on small shared machines thread scheduling dominates the
// numbers otherwise.
struct SingleThreadScope {
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    SingleThreadScope() { omp_set_num_threads(1); }
    ~SingleThreadScope() { omp_set_num_threads(saved); }
#endif
};

// The state is allocated once and reset between reps so that the timed
// region covers gate kernels only, not page faults on a fresh buffer.
template <typename State>
std::vector<double> time_runs(State& state, const Circuit& c, int repeat) {
    state.reset();
    state.run(c); // warmup, untimed
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(repeat));
    for (int r = 0; r < repeat; ++r) {
        state.reset();
        const auto t0 = std::chrono::steady_clock::now();
        state.run(c);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return times;
}

} // namespace

BenchRecord bench_circuit(const Circuit& c, Engine engine, int repeat) {
    if (repeat < 1) {
        throw ContractError("repetitions must be >= 1");
    }
    BenchRecord rec;
    rec.name = c.name();
    rec.qubits = c.num_qubits();
    rec.engine = engine;
    rec.repetitions = repeat;

    const Circuit body = c.unitaries_only();
    rec.gates = body.size();

    const SingleThreadScope timing_scope;
    if (engine == Engine::SV) {
        StateVector s(body.num_qubits());
        rec.times_ms = time_runs(s, body, repeat);
    } else {
        DensityMatrix d(body.num_qubits());
        rec.times_ms = time_runs(d, body, repeat);
    }
    std::vector<double> sorted = rec.times_ms;
    std::sort(sorted.begin(), sorted.end());
    rec.min_ms = sorted.front();
    const std::size_t mid = sorted.size() / 2;
    rec.median_ms = (sorted.size() % 2) ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return rec;
}

std::vector<BenchRecord> bench_directory(const std::string& dir, Engine engine, int repeat) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw ContractError("not a directory: " + dir);
    }
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
            files.push_back(entry.path().string());
        }
    }
    if (files.empty()) {
        throw ContractError("no .qasm files in " + dir);
    }
    std::sort(files.begin(), files.end());

    std::vector<BenchRecord> records;
    for (const auto& file : files) {
        const std::string stem = fs::path(file).stem().string();
        try {
            const Circuit c = parse_qasm_file(file);
            if (engine == Engine::DM && c.num_qubits() > DensityMatrix::kMaxQubits) {
                BenchRecord rec;
                rec.name = stem;
                rec.qubits = c.num_qubits();
                rec.engine = engine;
                rec.skipped = true;
                rec.reason = "qubit count exceeds density-matrix limit";
                records.push_back(std::move(rec));
                continue;
            }
            if (c.num_qubits() > StateVector::kMaxQubits) {
                BenchRecord rec;
                rec.name = stem;
                rec.qubits = c.num_qubits();
                rec.engine = engine;
                rec.skipped = true;
                rec.reason = "qubit count exceeds state-vector limit";
                records.push_back(std::move(rec));
                continue;
            }
            records.push_back(bench_circuit(c, engine, repeat));
        } catch (const Error& e) {
            BenchRecord rec;
            rec.name = stem;
            rec.engine = engine;
            rec.skipped = true;
            rec.reason = e.what();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

} // namespace naqs
