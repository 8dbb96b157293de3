#include "naqs/tfim.hpp"

#include "naqs/densitymatrix.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace naqs {

Hamiltonian build_tfim_hamiltonian(int n, double coupling, double field, Boundary boundary) {
    if (n < 1) {
        throw ContractError("TFIM chain needs at least one site");
    }
    Hamiltonian h;
    h.n = n;
    for (int i = 0; i + 1 < n; ++i) {
        std::string letters(static_cast<std::size_t>(n), 'I');
        letters[static_cast<std::size_t>(i)] = 'Z';
        letters[static_cast<std::size_t>(i + 1)] = 'Z';
        h.add(letters, -coupling);
    }
    if (boundary == Boundary::Periodic && n >= 3) {
        std::string letters(static_cast<std::size_t>(n), 'I');
        letters[static_cast<std::size_t>(n - 1)] = 'Z';
        letters[0] = 'Z';
        h.add(letters, -coupling);
    }
    for (int i = 0; i < n; ++i) {
        std::string letters(static_cast<std::size_t>(n), 'I');
        letters[static_cast<std::size_t>(i)] = 'X';
        h.add(letters, -field);
    }
    return h;
}

Circuit build_trotter_circuit(const TfimParams& p, double t) {
    if (t < 0.0) {
        throw ContractError("evolution time must be non-negative");
    }
    Circuit c(p.n, "tfim_trotter");
    if (t == 0.0) return c;
    const int steps = static_cast<int>(std::ceil(t * p.steps_per_unit_time));
    const double delta = t / steps;

    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < p.n; ++i) bonds.emplace_back(i, i + 1);
    if (p.boundary == Boundary::Periodic && p.n >= 3) bonds.emplace_back(p.n - 1, 0);

    for (int s = 0; s < steps; ++s) {
        // exp(+i J delta Z_i Z_j) = CX(i,j) RZ(-2 J delta on j) CX(i,j)
        for (const auto& [i, j] : bonds) {
            c.cx(i, j);
            c.rz(j, -2.0 * p.coupling * delta);
            c.cx(i, j);
        }
        // exp(+i h delta X_i) = RX(-2 h delta)
        for (int i = 0; i < p.n; ++i) {
            c.rx(i, -2.0 * p.field * delta);
        }
    }
    return c;
}

double average_z(const StateVector& s) {
    const int n = s.num_qubits();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        std::string letters(static_cast<std::size_t>(n), 'I');
        letters[static_cast<std::size_t>(i)] = 'Z';
        total += s.expectation(PauliString(letters));
    }
    return total / n;
}

namespace {

double average_z_of_dist(const std::vector<double>& dist, int n) {
    double total = 0.0;
    for (int q = 0; q < n; ++q) {
        double z = 0.0;
        for (std::size_t idx = 0; idx < dist.size(); ++idx) {
            z += ((idx >> q) & 1) ? -dist[idx] : dist[idx];
        }
        total += z;
    }
    return total / n;
}

std::vector<double> dist_from_counts(const std::map<std::string, std::uint64_t>& counts, int n,
                                     std::uint64_t shots) {
    std::vector<double> dist(std::size_t(1) << n, 0.0);
    for (const auto& [bits, count] : counts) {
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q) {
            if (bits[static_cast<std::size_t>(n - 1 - q)] == '1') idx |= std::size_t(1) << q;
        }
        dist[idx] = static_cast<double>(count) / static_cast<double>(shots);
    }
    return dist;
}

} // namespace

double exact_magnetization(const Hamiltonian& h, double t, const StateVector& initial) {
    if (h.n != initial.num_qubits()) {
        throw ContractError("Hamiltonian and state qubit counts differ");
    }
    const Eigen::MatrixXcd dense = hamiltonian_dense(h); // enforces the dense limit
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed");
    }
    const Eigen::Index dim = dense.rows();
    Eigen::VectorXcd psi0(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi0(i) = initial.amplitude(static_cast<std::size_t>(i));

    // |psi(t)> = V diag(exp(-i w t)) V^dagger |psi0>
    Eigen::VectorXcd coeffs = solver.eigenvectors().adjoint() * psi0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        coeffs(i) *= std::exp(cplx(0.0, -solver.eigenvalues()(i) * t));
    }
    const Eigen::VectorXcd psit = solver.eigenvectors() * coeffs;

    double total = 0.0;
    for (int q = 0; q < h.n; ++q) {
        const Eigen::Index bit = Eigen::Index(1) << q;
        double z = 0.0;
        for (Eigen::Index idx = 0; idx < dim; ++idx) {
            const double p = std::norm(psit(idx));
            z += (idx & bit) ? -p : p;
        }
        total += z;
    }
    return total / h.n;
}

std::vector<SweepRow> magnetization_sweep(const TfimParams& p,
                                          const std::optional<DeviceNoiseModel>& noise,
                                          std::uint64_t shots, std::uint64_t seed) {
    if (p.n < 1 || p.dt <= 0.0 || p.t_max < 0.0 || p.steps_per_unit_time < 1) {
        throw ContractError("invalid sweep parameters");
    }
    if (p.n > kDenseOracleLimit) {
        throw ContractError("sweep's exact column is limited to n <= " +
                            std::to_string(kDenseOracleLimit));
    }
    if (noise && p.n > DensityMatrix::kMaxQubits) {
        throw ContractError("noisy column is limited to n <= " +
                            std::to_string(DensityMatrix::kMaxQubits));
    }
    const Hamiltonian h = build_tfim_hamiltonian(p.n, p.coupling, p.field, p.boundary);
    const StateVector initial(p.n);

    std::vector<SweepRow> rows;
    std::uint64_t row_index = 0;
    for (double t = 0.0; t <= p.t_max + 1e-12; t += p.dt) {
        SweepRow row;
        row.t = t;
        row.exact = exact_magnetization(h, t, initial);

        const Circuit trotter = build_trotter_circuit(p, t);
        StateVector ideal(p.n);
        ideal.run(trotter);
        row.ideal = average_z(ideal);

        if (noise) {
            const NoisySchedule schedule = attach_noise(trotter, *noise);
            DensityMatrix rho(p.n);
            rho.run_schedule(schedule);
            std::vector<double> dist = readout_apply_dist(rho.probabilities(), schedule.readout);
            if (shots > 0) {
                const auto counts =
                    sample_distribution(dist, p.n, shots, derive_seed(seed, row_index));
                dist = dist_from_counts(counts, p.n, shots);
            }
            row.noisy = average_z_of_dist(dist, p.n);
        }
        rows.push_back(row);
        ++row_index;
    }
    return rows;
}

} // namespace naqs
