#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace onecopy {

using cplx = std::complex<double>;

// Invalid input, failed precondition, geometry or capacity limit.
// The CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A size cap was exceeded (dense register, cone width, joint-state table).
struct CapacityError : DomainError {
    using DomainError::DomainError;
};

// File or parse problem. The CLI maps these to exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double unitarity = 1e-10;
inline constexpr double trace_preserving = 1e-10;
inline constexpr double coeff_sum = 1e-9;
inline constexpr double row_sum = 1e-12;
inline constexpr double svd_cut = 1e-12;
inline constexpr double imag_part = 1e-10;
inline constexpr double decision_boundary = 1e-12;
}  // namespace tol

inline constexpr int dense_cap_qubits = 24;
inline constexpr long markov_joint_cap = 1000000;

}  // namespace onecopy
