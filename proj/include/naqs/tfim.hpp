#pragma once

#include "naqs/circuit.hpp"
#include "naqs/noise.hpp"
#include "naqs/pauli.hpp"
#include "naqs/statevector.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace naqs {

enum class Boundary { Open, Periodic };

/// Transverse-field Ising chain H = -J sum Z_i Z_{i+1} - h sum X_i, with
/// hbar = 1 and time measured in units of 1/J when J != 0. Spin-up maps to
/// |0> (sigma_z |0> = +|0>), so the all-up initial state is |0...0> with
/// site-averaged magnetization +1 at t = 0.
struct TfimParams {
    int n = 4;
    double coupling = 1.0;      // J
    double field = 1.0;         // h
    double t_max = 3.0;
    double dt = 0.1;
    int steps_per_unit_time = 100;
    Boundary boundary = Boundary::Open;
};

/// H = -J sum_<i,i+1> Z_i Z_{i+1} - h sum_i X_i. Open chains have n-1
/// bonds; periodic adds the (n-1, 0) bond (n >= 3).
Hamiltonian build_tfim_hamiltonian(int n, double coupling, double field,
                                   Boundary boundary = Boundary::Open);

/// First-order Trotter circuit approximating exp(-iHt):
/// steps = ceil(t * steps_per_unit_time), delta = t / steps; each step runs
/// CX(i,i+1), RZ(-2 J delta) on i+1, CX(i,i+1) per bond, then RX(-2 h delta)
/// per site. t = 0 yields an empty circuit.
Circuit build_trotter_circuit(const TfimParams& p, double t);

/// Reference evolution through the dense eigendecomposition of the
/// Hamiltonian: returns (1/n) sum_i <Z_i> of exp(-iHt)|initial>.
/// Limited to n <= kDenseOracleLimit.
double exact_magnetization(const Hamiltonian& h, double t, const StateVector& initial);

/// Site-averaged <Z> of a state.
double average_z(const StateVector& s);

struct SweepRow {
    double t = 0.0;
    double exact = 0.0;
    double ideal = 0.0;
    std::optional<double> noisy;
};

/// Magnetization table over t in {0, dt, 2dt, ... <= t_max}: the dense
/// oracle, the state-vector Trotter value, and (when a model is given) the
/// density-matrix value with readout applied to the final distribution.
/// With shots > 0 the noisy expectation comes from sampled counts instead
/// of the full distribution.
std::vector<SweepRow> magnetization_sweep(const TfimParams& p,
                                          const std::optional<DeviceNoiseModel>& noise,
                                          std::uint64_t shots, std::uint64_t seed);

} // namespace naqs
