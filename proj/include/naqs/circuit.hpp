#pragma once

#include "naqs/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace naqs {

/// Gate vocabulary. Qubit ordering is little-endian throughout the library:
/// qubit 0 is the least significant bit of a basis-state index, and for
/// multi-qubit gates qubits[0] is the least significant bit of the gate's
/// local basis index (so CX has control = qubits[0], target = qubits[1]).
enum class GateKind {
    X,
    Y,
    Z,
    H,
    S,
    SDG,
    T,
    TDG,
    ID,
    RX,
    RY,
    RZ,
    U1,
    U2,
    U3,
    CX,
    CZ,
    SWAP,
    CCX,
    MEASURE,
    BARRIER,
};

/// Number of qubits the kind acts on.
int gate_arity(GateKind kind);

/// Number of real (radian) parameters the kind takes.
int gate_param_count(GateKind kind);

/// True for kinds with a defined unitary matrix (everything except
/// MEASURE and BARRIER).
bool gate_is_unitary(GateKind kind);

/// Lowercase OpenQASM-style name ("x", "sdg", "cx", ...).
std::string_view gate_name(GateKind kind);

/// Inverse of gate_name. Throws ContractError for unknown names.
GateKind gate_kind_from_name(std::string_view name);

/// One gate application: kind, target qubits in order, radian parameters.
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> params;
};

/// Ordered gate list on a fixed qubit count. add() validates each op:
/// distinct in-range qubits, matching parameter count, and the terminal
/// measurement rule (no unitary may follow a MEASURE on the same qubit).
class Circuit {
  public:
    explicit Circuit(int num_qubits, std::string name = "");

    int num_qubits() const { return num_qubits_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const std::vector<GateOp>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    void add(GateOp op);
    void add(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});

    // Convenience builders used all over the applications and tests.
    Circuit& h(int q) { add(GateKind::H, {q}); return *this; }
    Circuit& x(int q) { add(GateKind::X, {q}); return *this; }
    Circuit& y(int q) { add(GateKind::Y, {q}); return *this; }
    Circuit& z(int q) { add(GateKind::Z, {q}); return *this; }
    Circuit& rx(int q, double theta) { add(GateKind::RX, {q}, {theta}); return *this; }
    Circuit& ry(int q, double theta) { add(GateKind::RY, {q}, {theta}); return *this; }
    Circuit& rz(int q, double theta) { add(GateKind::RZ, {q}, {theta}); return *this; }
    Circuit& cx(int control, int target) { add(GateKind::CX, {control, target}); return *this; }
    Circuit& cz(int a, int b) { add(GateKind::CZ, {a, b}); return *this; }
    Circuit& measure(int q) { add(GateKind::MEASURE, {q}); return *this; }

    /// Count of ops that carry a unitary (excludes MEASURE and BARRIER).
    std::size_t unitary_count() const;

    /// Copy without MEASURE and BARRIER ops.
    Circuit unitaries_only() const;

    /// Circuit applying the inverse unitaries in reverse order.
    /// Requires a measurement-free circuit.
    Circuit inverse() const;

  private:
    int num_qubits_;
    std::string name_;
    std::vector<GateOp> ops_;
    std::vector<bool> measured_;
};

} // namespace naqs
