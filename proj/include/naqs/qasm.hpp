#pragma once

#include "naqs/circuit.hpp"
#include "naqs/types.hpp"

#include <string>

namespace naqs {

/// Parse failure with source position. what() is pre-formatted as
/// "line L, column C: message".
class QasmParseError : public Error {
  public:
    QasmParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Parse an OpenQASM 2.0 program into the circuit IR.
///
/// Supported subset (see docs/qasm_subset.md for the conformance list):
/// the version header, include "qelib1.inc" (resolved against the built-in
/// gate table, no file I/O), qreg/creg declarations, applications of
/// id x y z h s sdg t tdg rx ry rz u1 u2 u3 cx cz swap ccx with whole-register
/// broadcast, measure (single and register-to-register), barrier, and angle
/// expressions over literals, pi, unary minus, + - * / and parentheses.
/// Multiple quantum registers are flattened into one index space in
/// declaration order. Unsupported statements (gate definitions, if, reset,
/// opaque) and unknown gate names raise QasmParseError with line/column.
Circuit parse_qasm(const std::string& text);

/// parse_qasm on a file's contents; the circuit name is the file stem.
Circuit parse_qasm_file(const std::string& path);

/// Emit the circuit back as OpenQASM 2.0 text such that
/// parse_qasm(emit_qasm(c)) reproduces the op list exactly
/// (angles round-trip through 17-significant-digit formatting).
std::string emit_qasm(const Circuit& c);

} // namespace naqs
