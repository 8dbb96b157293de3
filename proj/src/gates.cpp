#include "naqs/gates.hpp"

#include <cmath>

namespace naqs {

namespace {

using Eigen::MatrixXcd;
constexpr cplx kI{0.0, 1.0};

MatrixXcd mat2(cplx a, cplx b, cplx c, cplx d) {
    MatrixXcd m(2, 2);
    m << a, b, c, d;
    return m;
}

// OpenQASM 2.0 u3; upper-left entry cos(theta/2).
MatrixXcd u3(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return mat2(c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
                std::exp(kI * (phi + lambda)) * c);
}

// Local basis convention: bit j of the local index is the op's qubits[j],
// so for CX the control (qubits[0]) is the least significant local bit.
MatrixXcd cx_matrix() {
    MatrixXcd m = MatrixXcd::Identity(4, 4);
    m(1, 1) = 0; m(3, 3) = 0;
    m(1, 3) = 1; m(3, 1) = 1;
    return m;
}

MatrixXcd swap_matrix() {
    MatrixXcd m = MatrixXcd::Identity(4, 4);
    m(1, 1) = 0; m(2, 2) = 0;
    m(1, 2) = 1; m(2, 1) = 1;
    return m;
}

MatrixXcd ccx_matrix() {
    MatrixXcd m = MatrixXcd::Identity(8, 8);
    m(3, 3) = 0; m(7, 7) = 0;
    m(3, 7) = 1; m(7, 3) = 1;
    return m;
}

} // namespace

Eigen::MatrixXcd gate_matrix(GateKind kind, const std::vector<double>& params) {
    if (!gate_is_unitary(kind)) {
        throw ContractError(std::string(gate_name(kind)) + " has no unitary matrix");
    }
    const int want = gate_param_count(kind);
    if (static_cast<int>(params.size()) != want) {
        throw ContractError(std::string(gate_name(kind)) + " expects " + std::to_string(want) +
                            " parameter(s), got " + std::to_string(params.size()));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case GateKind::ID:
        return MatrixXcd::Identity(2, 2);
    case GateKind::X:
        return mat2(0, 1, 1, 0);
    case GateKind::Y:
        return mat2(0, -kI, kI, 0);
    case GateKind::Z:
        return mat2(1, 0, 0, -1);
    case GateKind::H:
        return mat2(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
    case GateKind::S:
        return mat2(1, 0, 0, kI);
    case GateKind::SDG:
        return mat2(1, 0, 0, -kI);
    case GateKind::T:
        return mat2(1, 0, 0, std::exp(kI * (M_PI / 4.0)));
    case GateKind::TDG:
        return mat2(1, 0, 0, std::exp(-kI * (M_PI / 4.0)));
    case GateKind::RX: {
        const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
        return mat2(c, -kI * s, -kI * s, c);
    }
    case GateKind::RY: {
        const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
        return mat2(c, -s, s, c);
    }
    case GateKind::RZ:
        return mat2(std::exp(-kI * (params[0] / 2.0)), 0, 0, std::exp(kI * (params[0] / 2.0)));
    case GateKind::U1:
        return mat2(1, 0, 0, std::exp(kI * params[0]));
    case GateKind::U2:
        return u3(M_PI / 2.0, params[0], params[1]);
    case GateKind::U3:
        return u3(params[0], params[1], params[2]);
    case GateKind::CX:
        return cx_matrix();
    case GateKind::CZ: {
        MatrixXcd m = MatrixXcd::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    }
    case GateKind::SWAP:
        return swap_matrix();
    case GateKind::CCX:
        return ccx_matrix();
    default:
        throw ContractError("unhandled gate kind");
    }
}

Eigen::MatrixXcd gate_matrix(const GateOp& op) { return gate_matrix(op.kind, op.params); }

double unitarity_residual(const Eigen::MatrixXcd& u) {
    const Eigen::MatrixXcd d =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

} // namespace naqs
