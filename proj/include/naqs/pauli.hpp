#pragma once

#include "naqs/types.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace naqs {

/// Weighted Pauli word. letters[i] in {I,X,Y,Z} acts on qubit i
/// (little-endian, matching the state-index convention).
struct PauliString {
    int n = 0;
    std::string letters; // length n, characters I X Y Z
    double coefficient = 1.0;

    PauliString() = default;
    PauliString(std::string letters_, double coeff = 1.0);
};

/// Parse "ZZII", "-1.0*XIII", "0.5*XY" into a PauliString.
/// Grammar: [coefficient '*']? [IXYZ]+ where coefficient is a signed real.
PauliString pauli_parse(const std::string& text);

/// Inverse of pauli_parse: "<coeff>*<letters>" with a round-trip-exact
/// coefficient (shortest representation that parses back identically).
std::string pauli_format(const PauliString& p);

/// Real-weighted sum of Pauli strings; Hermitian by construction.
struct Hamiltonian {
    int n = 0;
    std::vector<PauliString> terms;

    void add(const PauliString& term);
    void add(const std::string& letters, double coeff);
};

/// Maximum qubit count accepted by the dense oracle routines
/// (4096 x 4096 complex doubles is the desk-scale ceiling).
inline constexpr int kDenseOracleLimit = 12;

/// Dense 2^n x 2^n matrix of a single Pauli word (coefficient included),
/// with letters[0] as the least significant Kronecker factor.
Eigen::MatrixXcd pauli_dense(const PauliString& p);

/// Dense matrix of the full Hamiltonian. Throws ContractError when
/// n > kDenseOracleLimit.
Eigen::MatrixXcd hamiltonian_dense(const Hamiltonian& h);

} // namespace naqs
