#pragma once

#include "naqs/circuit.hpp"
#include "naqs/noise.hpp"
#include "naqs/pauli.hpp"
#include "naqs/rng.hpp"
#include "naqs/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace naqs {

/// Pure-state simulator: 2^n complex amplitudes, little-endian indexing
/// (amplitude index bit i = qubit i). A StateVector has one logical writer;
/// gate kernels may run data-parallel internally but produce bit-identical
/// results for any worker count.
class StateVector {
  public:
    static constexpr int kMaxQubits = 30;

    /// |0...0>. Throws ContractError outside 1 <= n <= 30 (memory guard).
    explicit StateVector(int num_qubits);

    /// Reset to |0...0> in place.
    void reset();

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(std::size_t index) const { return amps_[index]; }

    /// Apply one gate in place. BARRIER is a no-op; MEASURE is rejected.
    void apply(const GateOp& op);

    /// Apply all ops of a measurement-free circuit in order.
    void run(const Circuit& c);

    /// sum |amp|^2.
    double norm_sq() const;

    /// coeff * <psi|P|psi> (imaginary residue discarded; it is checked to
    /// be below 1e-10 of the norm in debug/test paths).
    double expectation(const PauliString& p) const;

    /// |amp|^2 for every basis state.
    std::vector<double> probabilities() const;

    /// Draw `shots` basis states from |amp|^2. Keys are MSB-first
    /// bitstrings (leftmost char = qubit n-1). Identical
    /// (state, shots, seed) gives identical counts.
    std::map<std::string, std::uint64_t> sample(std::uint64_t shots, std::uint64_t seed) const;

    /// Monte-Carlo unraveling of one channel application: selects Kraus
    /// operator i with probability ||K_i psi||^2, applies it, renormalizes.
    void apply_kraus_trajectory(const KrausChannel& ch, const std::vector<int>& qubits, Rng& rng);

    /// Run a noise-compiled schedule as one stochastic trajectory
    /// (gates applied exactly, channels sampled).
    void run_trajectory(const NoisySchedule& schedule, Rng& rng);

  private:
    int n_;
    std::vector<cplx> amps_;
};

/// Convenience: fresh |0..0> state evolved through the circuit.
StateVector sv_run(const Circuit& c);

/// Bitstring for a basis index, MSB-first over n qubits.
std::string index_to_bitstring(std::size_t index, int n);

/// Draw `shots` samples from an explicit probability distribution over
/// 2^n bitstrings; same deterministic sorted-uniform sweep as
/// StateVector::sample.
std::map<std::string, std::uint64_t> sample_distribution(const std::vector<double>& dist, int n,
                                                         std::uint64_t shots, std::uint64_t seed);

} // namespace naqs
