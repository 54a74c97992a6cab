// pauli.hpp — Closed forms for qubit Pauli channels: the maximum-output-norm
// case split, the asymptotic fidelity, the trial-state fidelity formula, the
// epsilon probability family and its plateau crossover.

#pragma once

#include "qfid/channel.hpp"
#include "qfid/types.hpp"

#include <array>
#include <optional>

namespace qfid {

// P(rho) = sum_a p_a sigma_a rho sigma_a. Canonical form has p1 <= p2 <= p3.
struct PauliChannel {
  std::array<double, 4> p{};
};

struct CanonicalPauli {
  PauliChannel channel;
  // axis_perm[i] = source axis (1..3) of canonical axis i+1; relabeling axes is
  // a unitary conjugation, so all fidelity-type quantities are unchanged.
  std::array<int, 3> axis_perm{};
};

Matrix pauli_matrix(int alpha);  // sigma_0..sigma_3

// Validates the probability 4-tuple (nonnegative, sums to 1 within 1e-9) and
// sorts p1..p3 ascending with a stable permutation record.
CanonicalPauli canonicalize(const PauliChannel& p);

bool is_canonical(const PauliChannel& p);

// nu_inf(P): p0 + p3 when p0 >= p2 (case a), else p2 + p3 (case b).
double nu_infty_closed(const PauliChannel& canonical);

// Asymptotic regularized fidelity; same case split as nu_infty_closed.
double f_tilde_closed(const PauliChannel& canonical);

// n-th root of the trial-state fidelity,
//   2^{-1/n} [(p0+p1)^n + (p0-p1)^n + (p3-p2)^n + (p3+p2)^n]^{1/n},
// evaluated with the largest base factored out; valid for n up to ~1e6.
double trial_fidelity_closed(const PauliChannel& canonical, long n);

// p = (1/3 - eps, 0, 1/3, 1/3 + eps), canonical by construction; 0 <= eps <= 1/3.
PauliChannel epsilon_channel(double eps);

// n0 = ln(4) / (3 eps): where the trial fidelity overtakes F^(1).
double crossover_n0(double eps);

// Recognize a channel of the epsilon family (within tol) and recover eps.
std::optional<double> epsilon_of(const PauliChannel& p, double tolerance = 1e-9);

// Kraus form {sqrt(p_a) sigma_a}.
Channel to_channel(const PauliChannel& p);

}  // namespace qfid
