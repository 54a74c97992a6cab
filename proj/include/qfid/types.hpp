// types.hpp — Shared scalar/matrix aliases and the library-wide tolerances

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qfid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double trace_preserving = 1e-9;
inline constexpr double state_norm = 1e-9;
inline constexpr double hermitian = 1e-9;
inline constexpr double eigenpair = 1e-10;
inline constexpr double numeric = 1e-10;
inline constexpr double dependent_pair = 1e-12;  // 1 - |<phi1|phi2>| below this is degenerate
}  // namespace tol

// Memory budgets, counted in complex entries of the materialized object.
namespace budget {
inline constexpr double kraus_entries = 268435456.0;     // 2^28, caps tensor_power near n=6..7 for qubit Pauli
inline constexpr double symmetric_entries = 2.0e7;       // C(n+3,3)^2 cap for the symmetric transfer matrix
inline constexpr int expand_max_copies = 24;             // 2^n amplitudes for Dicke expansion
}  // namespace budget

}  // namespace qfid
