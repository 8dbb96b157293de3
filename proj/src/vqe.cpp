#include "naqs/vqe.hpp"

#include "naqs/densitymatrix.hpp"
#include "naqs/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>

namespace naqs {

Circuit build_ansatz_circuit(const AnsatzSpec& a, const std::vector<double>& params) {
    if (a.n < 1 || a.layers < 1) {
        throw ContractError("ansatz needs n >= 1 and layers >= 1");
    }
    if (static_cast<int>(params.size()) != a.param_count()) {
        throw ContractError("ansatz expects " + std::to_string(a.param_count()) +
                            " parameters, got " + std::to_string(params.size()));
    }
    Circuit c(a.n, "ansatz");
    std::size_t k = 0;
    for (int q = 0; q < a.n; ++q) c.ry(q, params[k++]);
    for (int layer = 0; layer < a.layers; ++layer) {
        for (int i = 0; i + 1 < a.n; ++i) c.cx(i, i + 1);
        for (int q = 0; q < a.n; ++q) c.ry(q, params[k++]);
    }
    return c;
}

namespace {

// Map each non-Z letter onto Z by appending the usual basis rotations:
// H for X (H Z H = X) and SDG,H for Y.
void append_basis_rotation(Circuit& c, const PauliString& term) {
    for (int q = 0; q < term.n; ++q) {
        switch (term.letters[static_cast<std::size_t>(q)]) {
        case 'X':
            c.h(q);
            break;
        case 'Y':
            c.add(GateKind::SDG, {q});
            c.h(q);
            break;
        default:
            break;
        }
    }
}

double parity_mean(const std::map<std::string, std::uint64_t>& counts, std::size_t mask, int n,
                   std::uint64_t shots) {
    double acc = 0.0;
    for (const auto& [bits, count] : counts) {
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q) {
            if (bits[static_cast<std::size_t>(n - 1 - q)] == '1') idx |= std::size_t(1) << q;
        }
        const double sign = (std::popcount(idx & mask) & 1) ? -1.0 : 1.0;
        acc += sign * static_cast<double>(count);
    }
    return acc / static_cast<double>(shots);
}

double estimate_term_sampled(const Circuit& ansatz, const PauliString& term,
                             std::uint64_t shots, std::uint64_t term_seed,
                             const std::optional<DeviceNoiseModel>& noise) {
    Circuit rotated = ansatz;
    append_basis_rotation(rotated, term);
    std::size_t mask = 0;
    for (int q = 0; q < term.n; ++q) {
        if (term.letters[static_cast<std::size_t>(q)] != 'I') mask |= std::size_t(1) << q;
    }
    std::vector<double> dist;
    if (noise) {
        const NoisySchedule schedule = attach_noise(rotated, *noise);
        DensityMatrix rho(rotated.num_qubits());
        rho.run_schedule(schedule);
        dist = readout_apply_dist(rho.probabilities(), schedule.readout);
    } else {
        dist = sv_run(rotated).probabilities();
    }
    const auto counts = sample_distribution(dist, rotated.num_qubits(), shots, term_seed);
    return term.coefficient * parity_mean(counts, mask, rotated.num_qubits(), shots);
}

} // namespace

double vqe_energy(const std::vector<double>& params, const AnsatzSpec& a, const Hamiltonian& h,
                  const EnergyMode& mode, const std::optional<DeviceNoiseModel>& noise) {
    if (h.n != a.n) {
        throw ContractError("Hamiltonian and ansatz qubit counts differ");
    }
    const Circuit ansatz = build_ansatz_circuit(a, params);

    if (mode.shots == 0) {
        if (noise) {
            const DensityMatrix rho = dm_run_noisy(ansatz, *noise);
            double energy = 0.0;
            for (const auto& term : h.terms) energy += rho.expectation(term);
            return energy;
        }
        const StateVector psi = sv_run(ansatz);
        double energy = 0.0;
        for (const auto& term : h.terms) energy += psi.expectation(term);
        return energy;
    }

    double energy = 0.0;
    for (std::size_t k = 0; k < h.terms.size(); ++k) {
        energy += estimate_term_sampled(ansatz, h.terms[k], mode.shots,
                                        derive_seed(mode.seed, k), noise);
    }
    return energy;
}

MinimizeResult run_vqe(int n, double coupling, double field, const VqeOptions& opts,
                       const std::optional<DeviceNoiseModel>& noise) {
    const Hamiltonian h = build_tfim_hamiltonian(n, coupling, field);
    const AnsatzSpec ansatz{n, opts.layers};

    Rng rng(opts.seed);
    std::vector<double> x0(static_cast<std::size_t>(ansatz.param_count()));
    for (double& v : x0) v = rng.uniform(-0.1, 0.1);

    MinimizeOptions mopts;
    mopts.max_evals = opts.max_evals;
    mopts.x_tol = opts.x_tol;
    mopts.f_tol = opts.f_tol;
    mopts.seed = opts.seed;
    // A wide first simplex works much better than a local one for angle
    // parameters started near zero.
    mopts.initial_step = 2.0;

    const Objective objective = [&](const std::vector<double>& params) {
        return vqe_energy(params, ansatz, h, opts.mode, noise);
    };
    return minimize(objective, x0, mopts);
}

double ground_energy(const Hamiltonian& h) {
    const Eigen::MatrixXcd dense = hamiltonian_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed");
    }
    return solver.eigenvalues()(0);
}

} // namespace naqs
