#include "naqs/bench.hpp"
#include "naqs/densitymatrix.hpp"
#include "naqs/gates.hpp"
#include "naqs/neldermead.hpp"
#include "naqs/noise.hpp"
#include "naqs/pauli.hpp"
#include "naqs/qasm.hpp"
#include "naqs/statevector.hpp"
#include "naqs/tfim.hpp"
#include "naqs/vqe.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace naqs;

namespace {

py::array_t<cplx> amplitudes_array(const StateVector& s) {
    py::array_t<cplx> out(static_cast<py::ssize_t>(s.dim()));
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < s.dim(); ++i) buf(static_cast<py::ssize_t>(i)) = s.amplitude(i);
    return out;
}

py::array_t<cplx> density_array(const DensityMatrix& d) {
    const auto dim = static_cast<py::ssize_t>(d.dim());
    py::array_t<cplx> out({dim, dim});
    auto buf = out.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < dim; ++r) {
        for (py::ssize_t c = 0; c < dim; ++c) {
            buf(r, c) = d.entry(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    return out;
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    throw ContractError("boundary must be 'open' or 'periodic'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "noise-aware quantum circuit simulation engine";

    py::register_exception<Error>(m, "NaqsError");

    py::enum_<GateKind>(m, "GateKind")
        .value("X", GateKind::X)
        .value("Y", GateKind::Y)
        .value("Z", GateKind::Z)
        .value("H", GateKind::H)
        .value("S", GateKind::S)
        .value("SDG", GateKind::SDG)
        .value("T", GateKind::T)
        .value("TDG", GateKind::TDG)
        .value("ID", GateKind::ID)
        .value("RX", GateKind::RX)
        .value("RY", GateKind::RY)
        .value("RZ", GateKind::RZ)
        .value("U1", GateKind::U1)
        .value("U2", GateKind::U2)
        .value("U3", GateKind::U3)
        .value("CX", GateKind::CX)
        .value("CZ", GateKind::CZ)
        .value("SWAP", GateKind::SWAP)
        .value("CCX", GateKind::CCX)
        .value("MEASURE", GateKind::MEASURE)
        .value("BARRIER", GateKind::BARRIER);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int, std::string>(), py::arg("num_qubits"), py::arg("name") = "")
        .def_property_readonly("num_qubits", &Circuit::num_qubits)
        .def_property_readonly("name", &Circuit::name)
        .def("__len__", &Circuit::size)
        .def(
            "add",
            [](Circuit& c, const std::string& gate, const std::vector<int>& qubits,
               const std::vector<double>& params) {
                c.add(gate_kind_from_name(gate), qubits, params);
                return &c;
            },
            py::arg("gate"), py::arg("qubits"), py::arg("params") = std::vector<double>{},
            py::return_value_policy::reference_internal)
        .def("ops",
             [](const Circuit& c) {
                 py::list out;
                 for (const auto& op : c.ops()) {
                     out.append(py::make_tuple(std::string(gate_name(op.kind)), op.qubits,
                                               op.params));
                 }
                 return out;
             })
        .def("inverse", &Circuit::inverse)
        .def("unitaries_only", &Circuit::unitaries_only)
        .def("__repr__", [](const Circuit& c) {
            return "<Circuit '" + c.name() + "' qubits=" + std::to_string(c.num_qubits()) +
                   " ops=" + std::to_string(c.size()) + ">";
        });

    m.def("parse_qasm", &parse_qasm, py::arg("text"));
    m.def("parse_qasm_file", &parse_qasm_file, py::arg("path"));
    m.def("emit_qasm", &emit_qasm, py::arg("circuit"));

    m.def(
        "run_statevector",
        [](const Circuit& c) { return amplitudes_array(sv_run(c.unitaries_only())); },
        py::arg("circuit"), "Amplitudes after running the circuit's unitaries from |0...0>.");

    m.def(
        "sample",
        [](const Circuit& c, std::uint64_t shots, std::uint64_t seed) {
            return sv_run(c.unitaries_only()).sample(shots, seed);
        },
        py::arg("circuit"), py::arg("shots"), py::arg("seed"),
        "Measurement counts keyed by MSB-first bitstring.");

    m.def(
        "expectation",
        [](const Circuit& c, const std::string& pauli) {
            return sv_run(c.unitaries_only()).expectation(pauli_parse(pauli));
        },
        py::arg("circuit"), py::arg("pauli"));

    py::class_<DeviceNoiseModel>(m, "DeviceNoiseModel")
        .def_property_readonly("name", [](const DeviceNoiseModel& m_) { return m_.name; })
        .def_property_readonly("num_qubits", &DeviceNoiseModel::num_qubits)
        .def_property_readonly("warnings",
                               [](const DeviceNoiseModel& m_) { return m_.warnings; })
        .def_static("zero_noise", &DeviceNoiseModel::zero_noise, py::arg("num_qubits"));

    m.def("load_calibration", &load_calibration, py::arg("text"));
    m.def("load_calibration_file", &load_calibration_file, py::arg("path"));

    m.def(
        "run_density",
        [](const Circuit& c, const std::optional<DeviceNoiseModel>& noise) {
            const Circuit body = c.unitaries_only();
            DensityMatrix rho(body.num_qubits());
            if (noise) {
                rho.run_schedule(attach_noise(body, *noise));
            } else {
                rho.run(body);
            }
            return density_array(rho);
        },
        py::arg("circuit"), py::arg("noise") = std::nullopt,
        "Density matrix after the circuit, with the noise model's channels when given.");

    m.def(
        "density_expectation",
        [](const Circuit& c, const std::string& pauli,
           const std::optional<DeviceNoiseModel>& noise) {
            const Circuit body = c.unitaries_only();
            DensityMatrix rho(body.num_qubits());
            if (noise) {
                rho.run_schedule(attach_noise(body, *noise));
            } else {
                rho.run(body);
            }
            return rho.expectation(pauli_parse(pauli));
        },
        py::arg("circuit"), py::arg("pauli"), py::arg("noise") = std::nullopt);

    m.def(
        "tfim_sweep",
        [](int n, double coupling, double field, double t_max, double dt, int steps_per_unit,
           const std::string& boundary, const std::optional<DeviceNoiseModel>& noise,
           std::uint64_t shots, std::uint64_t seed) {
            TfimParams p;
            p.n = n;
            p.coupling = coupling;
            p.field = field;
            p.t_max = t_max;
            p.dt = dt;
            p.steps_per_unit_time = steps_per_unit;
            p.boundary = boundary_from_string(boundary);
            py::list out;
            for (const auto& row : magnetization_sweep(p, noise, shots, seed)) {
                out.append(py::make_tuple(row.t, row.exact, row.ideal,
                                          row.noisy ? py::cast(*row.noisy) : py::none()));
            }
            return out;
        },
        py::arg("n") = 4, py::arg("coupling") = 1.0, py::arg("field") = 1.0,
        py::arg("t_max") = 3.0, py::arg("dt") = 0.1, py::arg("steps_per_unit") = 100,
        py::arg("boundary") = "open", py::arg("noise") = std::nullopt, py::arg("shots") = 0,
        py::arg("seed") = 1,
        "Rows of (t, exact, ideal_trotter, noisy-or-None).");

    py::class_<MinimizeResult>(m, "MinimizeResult")
        .def_readonly("best_params", &MinimizeResult::best_params)
        .def_readonly("best_energy", &MinimizeResult::best_energy)
        .def_readonly("trace", &MinimizeResult::trace)
        .def_readonly("converged", &MinimizeResult::converged)
        .def_readonly("iterations", &MinimizeResult::iterations)
        .def_readonly("diagnostic", &MinimizeResult::diagnostic)
        .def("__repr__", [](const MinimizeResult& r) {
            return "<MinimizeResult best_energy=" + std::to_string(r.best_energy) +
                   " iterations=" + std::to_string(r.iterations) + ">";
        });

    m.def(
        "run_vqe",
        [](int n, double coupling, double field, int layers, int max_evals, std::uint64_t seed,
           std::uint64_t shots, const std::optional<DeviceNoiseModel>& noise) {
            VqeOptions opts;
            opts.layers = layers;
            opts.max_evals = max_evals;
            opts.seed = seed;
            if (shots > 0) opts.mode = EnergyMode::sampled(shots, seed);
            return run_vqe(n, coupling, field, opts, noise);
        },
        py::arg("n") = 4, py::arg("coupling") = 1.0, py::arg("field") = 1.0,
        py::arg("layers") = 3, py::arg("max_evals") = 500, py::arg("seed") = 1,
        py::arg("shots") = 0, py::arg("noise") = std::nullopt);

    m.def(
        "minimize",
        [](const std::function<double(const std::vector<double>&)>& f,
           const std::vector<double>& x0, int max_evals, double x_tol, double f_tol,
           double initial_step) {
            MinimizeOptions opts;
            opts.max_evals = max_evals;
            opts.x_tol = x_tol;
            opts.f_tol = f_tol;
            opts.initial_step = initial_step;
            return minimize(f, x0, opts);
        },
        py::arg("f"), py::arg("x0"), py::arg("max_evals") = 500, py::arg("x_tol") = 1e-8,
        py::arg("f_tol") = 1e-10, py::arg("initial_step") = 1.0);

    m.def(
        "bench_directory",
        [](const std::string& dir, const std::string& engine, int repeat) {
            const Engine e = engine == "dm" ? Engine::DM : Engine::SV;
            py::list out;
            for (const auto& rec : bench_directory(dir, e, repeat)) {
                py::dict row;
                row["name"] = rec.name;
                row["qubits"] = rec.qubits;
                row["gates"] = rec.gates;
                row["engine"] = rec.engine == Engine::DM ? "dm" : "sv";
                row["repetitions"] = rec.repetitions;
                row["times_ms"] = rec.times_ms;
                row["median_ms"] = rec.median_ms;
                row["min_ms"] = rec.min_ms;
                row["skipped"] = rec.skipped;
                row["reason"] = rec.reason;
                out.append(std::move(row));
            }
            return out;
        },
        py::arg("dir"), py::arg("engine") = "sv", py::arg("repeat") = 5,
        "Time every .qasm file in a directory; one dict per circuit.");

    m.def(
        "tfim_ground_energy",
        [](int n, double coupling, double field, const std::string& boundary) {
            return ground_energy(
                build_tfim_hamiltonian(n, coupling, field, boundary_from_string(boundary)));
        },
        py::arg("n"), py::arg("coupling") = 1.0, py::arg("field") = 1.0,
        py::arg("boundary") = "open");
}
