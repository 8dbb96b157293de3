#pragma once

#include "naqs/circuit.hpp"
#include "naqs/noise.hpp"
#include "naqs/pauli.hpp"
#include "naqs/types.hpp"

#include <vector>

namespace naqs {

/// Mixed-state simulator: dense 2^n x 2^n density matrix, row-major,
/// little-endian indexing on both row and column. Gates act as
/// rho -> U rho U^dagger, channels as rho -> sum_i K_i rho K_i^dagger,
/// both evaluated over strided sub-blocks (no superoperator matrices).
class DensityMatrix {
  public:
    static constexpr int kMaxQubits = 14;

    /// |0..0><0..0|. Throws ContractError outside 1 <= n <= 14
    /// (2^(2n) complex entries is the memory guard).
    explicit DensityMatrix(int num_qubits);

    /// Reset to |0..0><0..0| in place.
    void reset();

    int num_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }
    const std::vector<cplx>& data() const { return rho_; }
    cplx entry(std::size_t row, std::size_t col) const { return rho_[row * dim_ + col]; }

    void apply(const GateOp& op);
    void apply_channel(const KrausChannel& ch, const std::vector<int>& qubits);

    /// Run a measurement-free circuit (unitaries only).
    void run(const Circuit& c);

    /// Run a noise-compiled schedule exactly. Readout error is NOT applied
    /// here; it belongs to measurement post-processing.
    void run_schedule(const NoisySchedule& schedule);

    double trace() const;

    /// trace(rho^2), in [2^-n, 1] for a valid state.
    double purity() const;

    /// max |(rho - rho^dagger)_ij|.
    double hermiticity_residual() const;

    /// coeff * Re tr(P rho). Throws ContractError when the imaginary
    /// residue exceeds 1e-8.
    double expectation(const PauliString& p) const;

    /// diag(rho) real parts clipped at 0 and renormalized.
    std::vector<double> probabilities() const;

  private:
    int n_;
    std::size_t dim_;
    std::vector<cplx> rho_;
};

/// Execute the noise-compiled schedule of (c, m) from |0..0><0..0|.
/// Readout is carried in the schedule but not applied.
DensityMatrix dm_run_noisy(const Circuit& c, const DeviceNoiseModel& m);

} // namespace naqs
