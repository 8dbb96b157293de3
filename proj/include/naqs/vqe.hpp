#pragma once

#include "naqs/circuit.hpp"
#include "naqs/neldermead.hpp"
#include "naqs/noise.hpp"
#include "naqs/pauli.hpp"
#include "naqs/tfim.hpp"

#include <cstdint>
#include <optional>

namespace naqs {

/// Hardware-efficient ansatz: an initial RY column, then per layer a CX
/// ladder (i, i+1) for i = 0..n-2 followed by another RY column.
/// Parameter count is n * (layers + 1).
struct AnsatzSpec {
    int n = 0;
    int layers = 1;

    int param_count() const { return n * (layers + 1); }
};

/// Bind parameters into the ansatz circuit.
Circuit build_ansatz_circuit(const AnsatzSpec& a, const std::vector<double>& params);

/// How <H> is estimated: exact expectation values, or per-term sampling
/// with `shots` basis-rotated measurements (term k uses a seed derived
/// from `seed` and k).
struct EnergyMode {
    std::uint64_t shots = 0; // 0 = exact expectations
    std::uint64_t seed = 0;

    static EnergyMode exact() { return {0, 0}; }
    static EnergyMode sampled(std::uint64_t shots, std::uint64_t seed) { return {shots, seed}; }
};

/// Energy of the bound ansatz. Without noise the state-vector engine is
/// used; with a device model every evaluation runs the noise-compiled
/// schedule on the density-matrix engine. In sampled mode each Pauli term
/// is measured in its own rotated basis, with readout errors applied when
/// a model is present.
double vqe_energy(const std::vector<double>& params, const AnsatzSpec& a, const Hamiltonian& h,
                  const EnergyMode& mode = EnergyMode::exact(),
                  const std::optional<DeviceNoiseModel>& noise = std::nullopt);

struct VqeOptions {
    int layers = 3;
    int max_evals = 500;
    double x_tol = 1e-8;
    double f_tol = 1e-10;
    std::uint64_t seed = 1;
    EnergyMode mode = EnergyMode::exact();
};

/// Build the TFIM Hamiltonian and ansatz, draw initial parameters
/// uniformly from [-0.1, 0.1] with the run seed, and minimize vqe_energy.
/// The trace records every evaluation. Deterministic given its arguments.
MinimizeResult run_vqe(int n, double coupling, double field, const VqeOptions& opts,
                       const std::optional<DeviceNoiseModel>& noise = std::nullopt);

/// Ground energy of the Hamiltonian from the dense eigendecomposition
/// (the same oracle exact_magnetization uses). n <= kDenseOracleLimit.
double ground_energy(const Hamiltonian& h);

} // namespace naqs
