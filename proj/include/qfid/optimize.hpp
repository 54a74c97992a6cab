// optimize.hpp — Maximization engines: Barzilai-Borwein projected gradient
// ascent on the complex unit sphere, and alternating eigenvector ascent for
// the maximum output infinity-norm.

#pragma once

#include "qfid/channel.hpp"
#include "qfid/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qfid {

struct OptimizerOptions {
  int restarts = 20;
  int max_iters = 5000;
  double grad_tol = 1e-10;
  double step_min = 1e-6;
  double step_max = 1e2;
  std::uint64_t seed = 0;
  // Secondary cutoff for degenerate maxima, where the tangent gradient can
  // plateau above grad_tol while the value has long saturated: give up when
  // the best value improves by less than stall_rtol (relative) over
  // stall_window iterations. Does not count as convergence.
  int stall_window = 200;
  double stall_rtol = 3e-9;
};

void validate(const OptimizerOptions& opts);

struct MaximizationResult {
  double value = 0.0;
  Vector argmax;
  long iterations = 0;   // of the winning restart
  int restarts_used = 0;
  bool converged = false;
};

// Objective evaluated at a unit vector; fills the conjugate-coordinate
// gradient. Must be safe for concurrent invocation.
using SphereObjective = std::function<double(const Vector& x, Vector& grad)>;

// Projected-gradient ascent with alternating Barzilai-Borwein step sizes.
// Tangent gradient g_T = g - Re<x,g> x; steps x <- normalize(x + alpha g_T)
// with alpha alternating between |dx|^2/|Re<dx,dg>| and |Re<dx,dg>|/|dg|^2,
// clamped to [step_min, step_max]; the first step is step_min * 10. Steps are
// accepted non-monotonically; the best value seen is returned. Restart initial
// points are Haar-random with per-restart sub-seeds, so the result does not
// depend on scheduling.
MaximizationResult bb_maximize(Index dim, const SphereObjective& objective,
                               const OptimizerOptions& opts);

// F(N) = max_psi tr psi N(psi) over pure states.
MaximizationResult max_fidelity(const Channel& channel, const OptimizerOptions& opts);

// F(N^{tensor n})^{1/n} via maximization over the full d^n-dimensional sphere.
// The tensor-power fidelity is evaluated site by site; the budget that gates
// materializing tensor_power(N, n) still applies.
double regularized_fidelity_full(const Channel& channel, int copies,
                                 const OptimizerOptions& opts);

struct NuInftyResult {
  double value = 0.0;
  PureState phi1;  // output-side state: value = <phi1| N(phi2) |phi1>
  PureState phi2;  // input-side state
  long iterations = 0;
  int restarts_used = 0;
  bool converged = false;
};

// nu_inf(N) = max_psi ||N(psi)||_inf by alternating dominant-eigenvector
// ascent: phi <- top eigenvector of N(psi), psi <- top eigenvector of
// N^dagger(phi). Each half-step maximizes a linear functional exactly, so the
// objective is non-decreasing. When `half_step_trace` is non-null it receives
// the objective value after every half-step, one inner vector per restart.
NuInftyResult nu_infty(const Channel& channel, const OptimizerOptions& opts,
                       std::vector<std::vector<double>>* half_step_trace = nullptr);

// nu_2(N) = F(N^dagger N)^{1/2}.
double nu_2(const Channel& channel, const OptimizerOptions& opts);

}  // namespace qfid
