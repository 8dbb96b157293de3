#pragma once

#include "naqs/circuit.hpp"
#include "naqs/types.hpp"

#include <Eigen/Dense>
#include <vector>

namespace naqs {

/// Dense unitary for a gate kind, 2^k x 2^k with k = gate_arity(kind).
/// Basis convention: local index bit j corresponds to the op's qubits[j],
/// qubits[0] least significant. U1/U2/U3 use the OpenQASM 2.0
/// parameterization (u3 upper-left entry is cos(theta/2)).
/// Throws ContractError for MEASURE/BARRIER or a wrong parameter count.
Eigen::MatrixXcd gate_matrix(GateKind kind, const std::vector<double>& params = {});

/// gate_matrix for a concrete op.
Eigen::MatrixXcd gate_matrix(const GateOp& op);

/// max |(U^dagger U - I)_ij|; unitarity check used by tests and channel code.
double unitarity_residual(const Eigen::MatrixXcd& u);

} // namespace naqs
