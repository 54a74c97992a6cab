// channel.hpp — Kraus-form channels on a finite-dimensional system:
// construction, application, adjoint, composition, tensor powers, pure-state
// input-output fidelity with its conjugate-coordinate gradient, and the
// doubled-space (natural) representation.
//
// All values are immutable after construction; every operation is a pure
// function, safe for concurrent read-only use.

#pragma once

#include "qfid/errors.hpp"
#include "qfid/types.hpp"

#include <vector>

namespace qfid {

// Unit vector of amplitudes. The checked constructor enforces the norm within
// tol::state_norm; normalized() rescales instead.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState normalized(Vector amplitudes);

  const Vector& amplitudes() const { return amp_; }
  Index dim() const { return amp_.size(); }

 private:
  struct Unchecked {};
  PureState(Vector amplitudes, Unchecked) : amp_(std::move(amplitudes)) {}
  Vector amp_;
};

// Completely positive map rho -> sum_v A_v rho A_v^dagger. The
// trace_preserving flag is computed at construction (sum A^dagger A = I within
// tol::trace_preserving); general CP maps such as adjoints carry it false.
class Channel {
 public:
  static Channel from_kraus(std::vector<Matrix> kraus, bool require_tp);

  Index dim() const { return dim_; }
  std::size_t kraus_count() const { return kraus_.size(); }
  const Matrix& kraus(std::size_t i) const { return kraus_[i]; }
  const std::vector<Matrix>& kraus_ops() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }
  // Spectral norm of sum A^dagger A - I (an upper bound for derived channels).
  double tp_residual() const { return tp_residual_; }

  Matrix apply(const Matrix& rho) const;
  Channel adjoint() const;

 private:
  Channel(std::vector<Matrix> kraus, Index dim, bool tp, double residual)
      : kraus_(std::move(kraus)), dim_(dim), trace_preserving_(tp), tp_residual_(residual) {}

  friend Channel compose(const Channel&, const Channel&);
  friend Channel tensor(const Channel&, const Channel&);

  std::vector<Matrix> kraus_;
  Index dim_;
  bool trace_preserving_;
  double tp_residual_;
};

// (outer . inner)(rho) = outer(inner(rho)); Kraus set {A_v B_u}.
Channel compose(const Channel& outer, const Channel& inner);
Channel tensor(const Channel& a, const Channel& b);
Channel tensor_power(const Channel& n, int copies);

// F(N, psi) = tr psi N(psi) = sum_v |<psi|A_v|psi>|^2.
double fidelity(const Channel& channel, const PureState& psi);
double fidelity(const Channel& channel, const Vector& psi);

// Conjugate-coordinate (Wirtinger) gradient g with dF = 2 Re<g, dpsi> along
// any perturbation dpsi: g = sum_v [conj(a_v) A_v + a_v A_v^dagger] psi,
// a_v = <psi|A_v|psi>.
Vector fidelity_gradient(const Channel& channel, const PureState& psi);
Vector fidelity_gradient(const Channel& channel, const Vector& psi);

// T = sum_v A_v (x) conj(A_v) acting on the ket (x) conjugate-ket space;
// <psi (x) conj(psi)| T |psi (x) conj(psi)> = F(N, psi) for unit psi.
struct TransferMatrix {
  Index local_dim = 0;  // d; the matrix is d^2 x d^2
  Matrix mat;
};

TransferMatrix natural_representation(const Channel& channel);

// Pair index (i,j) -> i*d + j vectorization used by TransferMatrix.
Vector pair_vector(const Vector& psi);

// Largest eigenvalue and a unit eigenvector of a Hermitian matrix (within
// tol::hermitian). Full diagonalization; any vector in a degenerate top
// eigenspace is a valid result.
std::pair<double, PureState> dominant_eigenpair(const Matrix& hermitian);

}  // namespace qfid
