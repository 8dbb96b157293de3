#include "naqs/bench.hpp"
#include "naqs/densitymatrix.hpp"
#include "naqs/format.hpp"
#include "naqs/noise.hpp"
#include "naqs/qasm.hpp"
#include "naqs/statevector.hpp"
#include "naqs/tfim.hpp"
#include "naqs/vqe.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace naqs;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;    // unreadable/unparseable input files
constexpr int kExitConfig = 3;   // invalid flags, limits, unwritable output
constexpr int kExitInternal = 4; // invariant violations

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ContractError("cannot open output file: " + path);
    }
    return out;
}

std::optional<DeviceNoiseModel> load_noise(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return load_calibration_file(path);
}

struct RunArgs {
    std::string file;
    std::string engine = "sv";
    std::uint64_t shots = 1024;
    std::uint64_t seed = 1;
    std::string noise_path;
    std::string out_path;
};

int cmd_run(const RunArgs& args) {
    const Circuit circuit = parse_qasm_file(args.file);
    const auto noise = load_noise(args.noise_path);
    if (noise && args.engine != "dm") {
        throw ContractError("a noise file requires --engine dm");
    }
    const Circuit body = circuit.unitaries_only();

    std::vector<double> dist;
    if (args.engine == "sv") {
        if (body.num_qubits() > StateVector::kMaxQubits) {
            throw ContractError("circuit exceeds the state-vector qubit limit");
        }
        dist = sv_run(body).probabilities();
    } else {
        if (body.num_qubits() > DensityMatrix::kMaxQubits) {
            throw ContractError("circuit exceeds the density-matrix qubit limit");
        }
        DensityMatrix rho(body.num_qubits());
        if (noise) {
            const NoisySchedule schedule = attach_noise(body, *noise);
            rho.run_schedule(schedule);
            dist = readout_apply_dist(rho.probabilities(), schedule.readout);
        } else {
            rho.run(body);
            dist = rho.probabilities();
        }
    }

    auto out = open_output(args.out_path);
    if (args.shots == 0) {
        out << "bitstring,probability\n";
        for (std::size_t i = 0; i < dist.size(); ++i) {
            out << index_to_bitstring(i, body.num_qubits()) << "," << format_double(dist[i])
                << "\n";
        }
        std::cout << "wrote the " << dist.size() << "-entry probability vector for '"
                  << circuit.name() << "' to " << args.out_path << "\n";
    } else {
        const auto counts = sample_distribution(dist, body.num_qubits(), args.shots, args.seed);
        out << "bitstring,count\n";
        for (const auto& [bits, count] : counts) {
            out << bits << "," << count << "\n";
        }
        std::cout << "wrote " << args.shots << " samples over " << body.num_qubits()
                  << " qubits to " << args.out_path << "\n";
    }
    return kExitOk;
}

struct TfimArgs {
    TfimParams params;
    std::string boundary = "open";
    std::string noise_path;
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_tfim(TfimArgs& args) {
    if (args.boundary == "periodic") {
        args.params.boundary = Boundary::Periodic;
    } else if (args.boundary != "open") {
        throw ContractError("--boundary must be open or periodic");
    }
    const auto noise = load_noise(args.noise_path);
    const auto rows = magnetization_sweep(args.params, noise, args.shots, args.seed);

    auto out = open_output(args.out_path);
    out << "t,exact,ideal,noisy\n";
    for (const auto& row : rows) {
        out << format_double(row.t) << "," << format_double(row.exact) << ","
            << format_double(row.ideal) << ",";
        if (row.noisy) out << format_double(*row.noisy);
        out << "\n";
    }
    std::cout << "wrote " << rows.size() << " magnetization rows (n=" << args.params.n
              << ", J=" << args.params.coupling << ", h=" << args.params.field << ") to "
              << args.out_path << "\n";
    return kExitOk;
}

struct VqeArgs {
    int n = 4;
    double coupling = 1.0;
    double field = 1.0;
    int layers = 3;
    int max_evals = 500;
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::string noise_path;
    std::string out_path;
};

int cmd_vqe(const VqeArgs& args) {
    const auto noise = load_noise(args.noise_path);
    VqeOptions opts;
    opts.layers = args.layers;
    opts.max_evals = args.max_evals;
    opts.seed = args.seed;
    if (args.shots > 0) {
        opts.mode = EnergyMode::sampled(args.shots, args.seed);
    }
    const MinimizeResult result = run_vqe(args.n, args.coupling, args.field, opts, noise);

    auto out = open_output(args.out_path);
    out << "eval,energy\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        out << (i + 1) << "," << format_double(result.trace[i]) << "\n";
    }

    std::cout << "best energy " << format_double(result.best_energy) << " after "
              << result.iterations << " evaluations";
    if (args.n <= kDenseOracleLimit) {
        const double e0 = ground_energy(build_tfim_hamiltonian(
            args.n, args.coupling, args.field));
        std::cout << "; exact ground energy " << format_double(e0);
        if (e0 != 0.0) {
            std::cout << "; relative error "
                      << format_double(std::abs((result.best_energy - e0) / e0) * 100.0) << "%";
        }
    }
    std::cout << "\n";
    if (!result.diagnostic.empty()) {
        std::cerr << "optimizer aborted: " << result.diagnostic << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

struct BenchArgs {
    std::string dir;
    std::string engine = "sv";
    int repeat = 5;
    std::string out_path;
};

std::string sanitize_csv(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

int cmd_bench(const BenchArgs& args) {
    const Engine engine = args.engine == "dm" ? Engine::DM : Engine::SV;
    const auto records = bench_directory(args.dir, engine, args.repeat);

    auto out = open_output(args.out_path);
    out << "name,qubits,gates,engine,repetitions,median_ms,min_ms,times_ms,status,reason\n";
    for (const auto& rec : records) {
        out << sanitize_csv(rec.name) << "," << rec.qubits << "," << rec.gates << ","
            << (rec.engine == Engine::DM ? "dm" : "sv") << "," << rec.repetitions << ",";
        if (!rec.skipped) {
            out << format_double(rec.median_ms) << "," << format_double(rec.min_ms) << ",";
            for (std::size_t i = 0; i < rec.times_ms.size(); ++i) {
                if (i) out << ";";
                out << format_double(rec.times_ms[i]);
            }
            out << ",ok,";
        } else {
            out << ",,,skipped," << sanitize_csv(rec.reason);
        }
        out << "\n";
    }
    std::size_t timed = 0;
    for (const auto& rec : records) timed += rec.skipped ? 0 : 1;
    std::cout << "benchmarked " << timed << " circuit(s), skipped " << (records.size() - timed)
              << "; results in " << args.out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-aware quantum circuit simulator"};
    app.set_version_flag("--version", "naqs 0.1.0");
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "simulate a QASM file and emit counts or probabilities");
    run->add_option("file", run_args.file, "OpenQASM 2.0 input file")->required();
    run->add_option("--engine", run_args.engine, "sv or dm")
        ->check(CLI::IsMember({"sv", "dm"}));
    run->add_option("--shots", run_args.shots, "samples to draw; 0 emits the probability vector");
    run->add_option("--seed", run_args.seed, "sampling seed");
    run->add_option("--noise", run_args.noise_path, "calibration JSON (requires --engine dm)");
    run->add_option("--out", run_args.out_path, "output CSV path")->required();

    TfimArgs tfim_args;
    auto* tfim = app.add_subcommand("tfim", "transverse-field Ising magnetization sweep");
    tfim->add_option("--n", tfim_args.params.n, "spin count")->check(CLI::PositiveNumber);
    tfim->add_option("--coupling", tfim_args.params.coupling, "Ising coupling J");
    tfim->add_option("--field", tfim_args.params.field, "transverse field h");
    tfim->add_option("--t-max", tfim_args.params.t_max, "largest evolution time")
        ->check(CLI::NonNegativeNumber);
    tfim->add_option("--dt", tfim_args.params.dt, "sample spacing")->check(CLI::PositiveNumber);
    tfim->add_option("--steps-per-unit", tfim_args.params.steps_per_unit_time,
                     "Trotter steps per unit time")
        ->check(CLI::PositiveNumber);
    tfim->add_option("--boundary", tfim_args.boundary, "open or periodic")
        ->check(CLI::IsMember({"open", "periodic"}));
    tfim->add_option("--noise", tfim_args.noise_path, "calibration JSON for the noisy column");
    tfim->add_option("--shots", tfim_args.shots, "sample the noisy column with this many shots");
    tfim->add_option("--seed", tfim_args.seed, "sampling seed");
    tfim->add_option("--out", tfim_args.out_path, "output CSV path")->required();

    VqeArgs vqe_args;
    auto* vqe = app.add_subcommand("vqe", "variational ground-state search for the Ising chain");
    vqe->add_option("--n", vqe_args.n, "spin count")->check(CLI::PositiveNumber);
    vqe->add_option("--coupling", vqe_args.coupling, "Ising coupling J");
    vqe->add_option("--field", vqe_args.field, "transverse field h");
    vqe->add_option("--layers", vqe_args.layers, "ansatz layers")->check(CLI::PositiveNumber);
    vqe->add_option("--max-evals", vqe_args.max_evals, "energy evaluation budget")
        ->check(CLI::PositiveNumber);
    vqe->add_option("--shots", vqe_args.shots, "per-term shots; 0 = exact expectations");
    vqe->add_option("--seed", vqe_args.seed, "run seed");
    vqe->add_option("--noise", vqe_args.noise_path, "calibration JSON");
    vqe->add_option("--out", vqe_args.out_path, "trace CSV path")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "time every .qasm circuit in a directory");
    bench->add_option("--dir", bench_args.dir, "directory of .qasm files")->required();
    bench->add_option("--engine", bench_args.engine, "sv or dm")
        ->check(CLI::IsMember({"sv", "dm"}));
    bench->add_option("--repeat", bench_args.repeat, "timed repetitions per circuit")
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_args.out_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (tfim->parsed()) return cmd_tfim(tfim_args);
        if (vqe->parsed()) return cmd_vqe(vqe_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const QasmParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitConfig;
}
