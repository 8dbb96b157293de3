#include "naqs/circuit.hpp"

#include <algorithm>
#include <unordered_set>

namespace naqs {

int gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    case GateKind::CCX:
        return 3;
    default:
        return 1;
    }
}

int gate_param_count(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U1:
        return 1;
    case GateKind::U2:
        return 2;
    case GateKind::U3:
        return 3;
    default:
        return 0;
    }
}

bool gate_is_unitary(GateKind kind) {
    return kind != GateKind::MEASURE && kind != GateKind::BARRIER;
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::T: return "t";
    case GateKind::TDG: return "tdg";
    case GateKind::ID: return "id";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::U1: return "u1";
    case GateKind::U2: return "u2";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    case GateKind::CCX: return "ccx";
    case GateKind::MEASURE: return "measure";
    case GateKind::BARRIER: return "barrier";
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    static const std::pair<std::string_view, GateKind> table[] = {
        {"x", GateKind::X},     {"y", GateKind::Y},       {"z", GateKind::Z},
        {"h", GateKind::H},     {"s", GateKind::S},       {"sdg", GateKind::SDG},
        {"t", GateKind::T},     {"tdg", GateKind::TDG},   {"id", GateKind::ID},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},     {"rz", GateKind::RZ},
        {"u1", GateKind::U1},   {"u2", GateKind::U2},     {"u3", GateKind::U3},
        {"cx", GateKind::CX},   {"cz", GateKind::CZ},     {"swap", GateKind::SWAP},
        {"ccx", GateKind::CCX}, {"measure", GateKind::MEASURE}, {"barrier", GateKind::BARRIER},
    };
    for (const auto& [n, k] : table) {
        if (n == name) return k;
    }
    throw ContractError("unknown gate name: " + std::string(name));
}

Circuit::Circuit(int num_qubits, std::string name)
    : num_qubits_(num_qubits), name_(std::move(name)), measured_(static_cast<std::size_t>(std::max(num_qubits, 0)), false) {
    if (num_qubits < 1) {
        throw ContractError("circuit qubit count must be positive");
    }
}

void Circuit::add(GateOp op) {
    const int arity = gate_arity(op.kind);
    if (static_cast<int>(op.qubits.size()) != arity) {
        throw ContractError(std::string(gate_name(op.kind)) + " expects " +
                            std::to_string(arity) + " qubit(s), got " +
                            std::to_string(op.qubits.size()));
    }
    const int want_params = gate_param_count(op.kind);
    if (static_cast<int>(op.params.size()) != want_params) {
        throw ContractError(std::string(gate_name(op.kind)) + " expects " +
                            std::to_string(want_params) + " parameter(s), got " +
                            std::to_string(op.params.size()));
    }
    std::unordered_set<int> seen;
    for (int q : op.qubits) {
        if (q < 0 || q >= num_qubits_) {
            throw ContractError("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + "-qubit circuit");
        }
        if (!seen.insert(q).second) {
            throw ContractError("duplicate qubit index " + std::to_string(q) + " in " +
                                std::string(gate_name(op.kind)));
        }
    }
    if (op.kind == GateKind::MEASURE) {
        measured_[static_cast<std::size_t>(op.qubits[0])] = true;
    } else if (gate_is_unitary(op.kind)) {
        for (int q : op.qubits) {
            if (measured_[static_cast<std::size_t>(q)]) {
                throw ContractError("unitary after measurement on qubit " + std::to_string(q) +
                                    " (measurements are terminal)");
            }
        }
    }
    ops_.push_back(std::move(op));
}

void Circuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
    add(GateOp{kind, std::move(qubits), std::move(params)});
}

std::size_t Circuit::unitary_count() const {
    std::size_t count = 0;
    for (const auto& op : ops_) {
        if (gate_is_unitary(op.kind)) ++count;
    }
    return count;
}

Circuit Circuit::unitaries_only() const {
    Circuit out(num_qubits_, name_);
    for (const auto& op : ops_) {
        if (gate_is_unitary(op.kind)) out.add(op);
    }
    return out;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_, name_.empty() ? "" : name_ + "_inv");
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        const GateOp& op = *it;
        switch (op.kind) {
        case GateKind::MEASURE:
            throw ContractError("cannot invert a circuit containing measurements");
        case GateKind::BARRIER:
            out.add(op);
            break;
        case GateKind::S:
            out.add(GateKind::SDG, op.qubits);
            break;
        case GateKind::SDG:
            out.add(GateKind::S, op.qubits);
            break;
        case GateKind::T:
            out.add(GateKind::TDG, op.qubits);
            break;
        case GateKind::TDG:
            out.add(GateKind::T, op.qubits);
            break;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::U1:
            out.add(op.kind, op.qubits, {-op.params[0]});
            break;
        case GateKind::U2:
            // u2(phi,lambda)^-1 = u3(-pi/2, -lambda, -phi)
            out.add(GateKind::U3, op.qubits,
                    {-1.5707963267948966, -op.params[1], -op.params[0]});
            break;
        case GateKind::U3:
            out.add(GateKind::U3, op.qubits, {-op.params[0], -op.params[2], -op.params[1]});
            break;
        default:
            // self-inverse kinds: X Y Z H ID CX CZ SWAP CCX
            out.add(op);
            break;
        }
    }
    return out;
}

} // namespace naqs
