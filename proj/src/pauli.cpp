#include "naqs/pauli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace naqs {

namespace {

bool is_pauli_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

Eigen::Matrix2cd single_pauli(char letter) {
    Eigen::Matrix2cd m;
    switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ContractError(std::string("illegal Pauli letter: ") + letter);
    }
    return m;
}

} // namespace

PauliString::PauliString(std::string letters_, double coeff)
    : n(static_cast<int>(letters_.size())), letters(std::move(letters_)), coefficient(coeff) {
    for (char c : letters) {
        if (!is_pauli_letter(c)) {
            throw ContractError(std::string("illegal Pauli letter: ") + c);
        }
    }
    if (!std::isfinite(coefficient)) {
        throw ContractError("Pauli coefficient must be finite");
    }
}

PauliString pauli_parse(const std::string& text) {
    if (text.empty()) {
        throw ContractError("empty Pauli string");
    }
    const auto star = text.find('*');
    double coeff = 1.0;
    std::string letters = text;
    if (star != std::string::npos) {
        const std::string head = text.substr(0, star);
        letters = text.substr(star + 1);
        char* end = nullptr;
        coeff = std::strtod(head.c_str(), &end);
        if (end == head.c_str() || *end != '\0') {
            throw ContractError("bad Pauli coefficient: '" + head + "'");
        }
    }
    if (letters.empty()) {
        throw ContractError("empty Pauli letters in '" + text + "'");
    }
    return PauliString(letters, coeff);
}

std::string pauli_format(const PauliString& p) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", p.coefficient);
    return std::string(buf) + "*" + p.letters;
}

void Hamiltonian::add(const PauliString& term) {
    if (terms.empty() && n == 0) {
        n = term.n;
    }
    if (term.n != n) {
        throw ContractError("Hamiltonian term length " + std::to_string(term.n) +
                            " does not match n=" + std::to_string(n));
    }
    terms.push_back(term);
}

void Hamiltonian::add(const std::string& letters, double coeff) {
    add(PauliString(letters, coeff));
}

Eigen::MatrixXcd pauli_dense(const PauliString& p) {
    // letters[0] acts on qubit 0 = least significant index bit, so it is
    // the rightmost Kronecker factor.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, p.coefficient);
    for (char letter : p.letters) {
        const Eigen::Matrix2cd f = single_pauli(letter);
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = f(i, j) * m;
            }
        }
        m = std::move(next);
    }
    return m;
}

Eigen::MatrixXcd hamiltonian_dense(const Hamiltonian& h) {
    if (h.n > kDenseOracleLimit) {
        throw ContractError("hamiltonian_dense limited to n <= " +
                            std::to_string(kDenseOracleLimit) + ", got n=" + std::to_string(h.n));
    }
    if (h.n < 1) {
        throw ContractError("hamiltonian_dense requires n >= 1");
    }
    const Eigen::Index dim = Eigen::Index(1) << h.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : h.terms) {
        m += pauli_dense(term);
    }
    return m;
}

} // namespace naqs
