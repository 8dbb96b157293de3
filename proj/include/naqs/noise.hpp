#pragma once

#include "naqs/circuit.hpp"
#include "naqs/types.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace naqs {

/// Raised for schema violations and bad values in calibration documents.
class CalibrationError : public Error {
  public:
    explicit CalibrationError(const std::string& msg) : Error(msg) {}
};

/// One noise process as a set of Kraus operators {K_i} with
/// sum K_i^dagger K_i = I. Channels act on 1 or 2 qubits.
struct KrausChannel {
    int arity = 1;
    std::vector<Eigen::MatrixXcd> kraus;

    /// max |(sum K^dagger K - I)_ij|.
    double completeness_residual() const;

    /// True when the channel is a single identity operator.
    bool is_identity(double tol = 1e-14) const;
};

/// Validates dimensions and the completeness sum (residual <= tol).
/// Throws ContractError on failure.
void validate_channel(const KrausChannel& ch, double tol = 1e-10);

/// Identity channel (single Kraus operator I).
KrausChannel identity_channel(int arity);

/// Uniform-Pauli depolarizing channel:
///   rho -> (1-p) rho + (p/3) sum_P P rho P          (arity 1)
///   rho -> (1-p) rho + (p/15) sum_{P != II} P rho P (arity 2)
/// Note the convention: p is the total probability of a non-identity Pauli
/// error, so a one-qubit <Z> contracts by (1 - 4p/3), not (1 - p).
KrausChannel depolarizing(double p, int arity = 1);

/// Thermal relaxation over a gate duration: amplitude damping with
/// gamma = 1 - exp(-d/T1) composed with the pure dephasing needed to make
/// the total off-diagonal decay equal exp(-d/T2_eff), T2_eff = min(T2, T1).
/// Times in microseconds, duration in nanoseconds.
KrausChannel thermal_relaxation(double t1_us, double t2_us, double duration_ns);

/// Single-qubit amplitude damping with decay probability gamma.
KrausChannel amplitude_damping(double gamma);

/// Per-qubit readout confusion parameters: p01 = P(read 0 | true 1),
/// p10 = P(read 1 | true 0).
struct ReadoutModel {
    struct QubitReadout {
        double p01 = 0.0;
        double p10 = 0.0;
    };
    std::vector<QubitReadout> qubits;

    bool is_trivial() const;
};

/// Applies the tensor-product confusion map to a 2^n distribution
/// (index bit i = qubit i). Input must sum to 1 within 1e-9.
std::vector<double> readout_apply_dist(const std::vector<double>& dist, const ReadoutModel& r);

/// Flips each sampled bit independently with its confusion probability.
/// Bitstring keys are MSB-first (leftmost char = highest qubit index).
/// Deterministic under a fixed seed.
std::map<std::string, std::uint64_t>
readout_apply_samples(const std::map<std::string, std::uint64_t>& counts, const ReadoutModel& r,
                      std::uint64_t seed);

/// Device calibration: per-qubit relaxation/readout numbers plus per-gate
/// error probabilities and durations, with optional defaults for
/// uncalibrated (gate, qubits) pairs.
struct DeviceNoiseModel {
    struct QubitParams {
        double t1_us = 0.0;
        double t2_us = 0.0; // clamped to t1 when the document exceeds it
        double readout_p01 = 0.0;
        double readout_p10 = 0.0;
    };
    struct GateParams {
        std::string name;
        std::vector<int> qubits;
        double error = 0.0;
        double duration_ns = 0.0;
    };

    std::string name;
    std::vector<QubitParams> qubits;
    std::vector<GateParams> gates;
    std::optional<GateParams> default_1q;
    std::optional<GateParams> default_2q;
    std::vector<std::string> warnings; // e.g. t2 > t1 clamps

    int num_qubits() const { return static_cast<int>(qubits.size()); }

    /// All-zero model covering n qubits (identity channels everywhere).
    static DeviceNoiseModel zero_noise(int n);

    /// Lookup for (gate name, qubit tuple); falls back to arity defaults.
    std::optional<GateParams> find_gate(std::string_view gate, const std::vector<int>& qs) const;

    ReadoutModel readout() const;
};

/// Parse and validate a calibration JSON document. t2_us > t1_us entries
/// are clamped with a recorded warning. Throws CalibrationError with the
/// offending field name on schema violations.
DeviceNoiseModel load_calibration(const std::string& text);
DeviceNoiseModel load_calibration_file(const std::string& path);

/// One entry of a noise-compiled schedule: either the original gate op or
/// a channel applied to specific qubits.
struct ChannelApplication {
    KrausChannel channel;
    std::vector<int> qubits;
};
using ScheduleItem = std::variant<GateOp, ChannelApplication>;

/// Circuit compiled against a device model: each unitary gate followed by
/// its depolarizing channel and per-qubit thermal relaxation. Projecting
/// out the channel items recovers the original op sequence exactly.
struct NoisySchedule {
    int num_qubits = 0;
    std::vector<ScheduleItem> items;
    ReadoutModel readout;

    /// The gate ops with all channel items removed.
    std::vector<GateOp> project_ops() const;
};

/// Compile a circuit against a device model. Every unitary (gate, qubits)
/// pair must have a calibration entry or an arity default; MEASURE and
/// BARRIER pass through with no channels attached. Gates on more than two
/// qubits are rejected (channels are 1- or 2-qubit only).
NoisySchedule attach_noise(const Circuit& c, const DeviceNoiseModel& m);

} // namespace naqs
