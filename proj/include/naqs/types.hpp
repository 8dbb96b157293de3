#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace naqs {

using cplx = std::complex<double>;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an operation's preconditions are violated (bad qubit index,
/// wrong parameter count, size mismatch, out-of-range guard).
class ContractError : public Error {
  public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

} // namespace naqs
