// symmetric.hpp — F(N^{tensor n}, psi) for permutation-symmetric n-qubit
// states without touching the 2^n-dimensional space. The channel acts through
// the symmetric tensor power of its 4x4 natural representation, indexed by
// occupation numbers of the doubled local alphabet {00, 01, 10, 11}.

#pragma once

#include "qfid/channel.hpp"
#include "qfid/optimize.hpp"
#include "qfid/types.hpp"

#include <array>
#include <vector>

namespace qfid {

// Permutation-symmetric n-qubit state: n+1 coefficients in the Dicke basis
// |D_k^n> (equal superposition of all strings with k ones).
struct SymmetricState {
  int n = 0;
  Vector coeffs;  // c_0 .. c_n, unit 2-norm
};

// Site counts (m00, m01, m10, m11) over the pair alphabet; sums to n.
using OccupationIndex = std::array<int, 4>;

// All 4-part compositions of n, ordered m00-major descending so that n = 1
// reproduces the natural pair-letter order (00, 01, 10, 11). C(n+3,3) entries.
std::vector<OccupationIndex> enumerate_occupations(int n);

Index occupation_count(int n);  // C(n+3, 3)

// psi (x) conj(psi) of a symmetric state in occupation coordinates:
// Phi_m = sqrt(multinomial(n; m)) c_k conj(c_l) / sqrt(C(n,k) C(n,l)) with
// k = m10 + m11 (ket copy), l = m01 + m11 (conjugate copy). Unit norm.
Vector pair_embedding(const SymmetricState& s);

// Restriction of T^{tensor n} to the symmetric subspace. Entry (m, m') equals
// sqrt(mult(m)/mult(m')) times the sum over 4x4 contingency tables with row
// sums m and column sums m' of prod_a [m_a! / prod_b k_ab!] prod T_ab^k_ab.
struct SymmetricTransferMatrix {
  int n = 0;
  std::vector<OccupationIndex> basis;
  Matrix entries;
};

SymmetricTransferMatrix symmetric_transfer(const TransferMatrix& t, int n);

// The same quadratic form collapsed onto Dicke-pair coordinates. Phi depends
// on the state only through w_(k,l) = c_k conj(c_l), so V^+ T_sym V with V the
// (one-nonzero-per-row) embedding matrix carries everything the evaluation and
// the maximization need in an (n+1)^2-dimensional space. Built in one
// streaming pass over the rows of T_sym without materializing it.
class DickeTransfer {
 public:
  DickeTransfer(const Channel& channel, int n);  // channel must act on qubits

  int copies() const { return n_; }
  const Matrix& matrix() const { return t_dicke_; }

  // F and its conjugate-coordinate gradient with respect to the Dicke
  // coefficients, plus the imaginary part of the raw quadratic form. All are
  // homogeneous in c, so callers may pass unnormalized vectors (finite
  // difference probes); the quadratic form then scales by ||c||^4.
  double fidelity(const Vector& c, Vector* grad = nullptr, double* imag_part = nullptr) const;

 private:
  int n_;
  Matrix t_dicke_;  // (n+1)^2 x (n+1)^2, row-major (k,l) pair indexing
  Matrix herm_;     // (t_dicke_ + t_dicke_^+)/2; one matvec serves value and gradient
};

// F(N^{tensor n}, s) = Re(Phi^+ T_sym Phi); the imaginary part must vanish.
double symmetric_fidelity(const Channel& channel, const SymmetricState& s);
double symmetric_fidelity(const DickeTransfer& transfer, const SymmetricState& s);

// Conjugate-coordinate gradient of the fidelity with respect to conj(c);
// exploits the bilinear structure of the embedding.
Vector symmetric_fidelity_gradient(const Channel& channel, const SymmetricState& s);
Vector symmetric_fidelity_gradient(const DickeTransfer& transfer, const SymmetricState& s);

struct SymmetricMaxResult {
  MaximizationResult raw;      // value = max F(N^{tensor n}, .) over symmetric states
  double fidelity_root = 0.0;  // value^{1/n}
  SymmetricState argmax;
};

// BB ascent over the (n+1)-sphere of Dicke coefficients.
SymmetricMaxResult max_symmetric_fidelity(const Channel& channel, int n,
                                          const OptimizerOptions& opts);

// Full 2^n-dimensional amplitudes of a symmetric state (test oracle support).
PureState expand(const SymmetricState& s);

}  // namespace qfid
