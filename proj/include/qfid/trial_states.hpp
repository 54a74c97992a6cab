// trial_states.hpp — Trial states psi_n built from a pair (phi1, phi2), the 16
// pair coefficients N_ijkl, the Kraus vectors w, x, y, z, and the closed-form
// trial fidelity valid at any n.

#pragma once

#include "qfid/channel.hpp"
#include "qfid/symmetric.hpp"
#include "qfid/types.hpp"

#include <array>

namespace qfid {

struct StatePair {
  PureState phi1;
  PureState phi2;
  Complex overlap;  // <phi1|phi2>

  StatePair(PureState a, PureState b);
};

// 1 - |<phi1|phi2>| below tol::dependent_pair.
bool linearly_dependent(const StatePair& pair);

// (r_ij)_v = <phi_i| A_v |phi_j>; w = r11, x = r12, y = r21, z = r22.
struct KrausVectors {
  Vector w, x, y, z;
};

KrausVectors kraus_vectors(const Channel& channel, const StatePair& pair);

// N_ijkl = <phi_i| N(|phi_j><phi_k|) |phi_l>, indices in {1, 2}.
class PairCoefficients {
 public:
  Complex& at(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }
  Complex at(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }

 private:
  static int index(int i, int j, int k, int l) {
    return ((i - 1) * 2 + (j - 1)) * 4 + (k - 1) * 2 + (l - 1);
  }
  std::array<Complex, 16> c_{};
};

// Computed as r_lk^+ r_ij and cross-checked against direct evaluation through
// the channel; the two routes must agree to 1e-12.
PairCoefficients channel_pair_coefficients(const Channel& channel, const StatePair& pair);

struct TrialState {
  PureState state;
  // |<phi1|phi2>| = 1: psi_n degenerates to phi1^{tensor n}.
  bool degenerate = false;
};

// psi_n = c_n/sqrt(2) (phi1^{tensor n} + phi2^{tensor n}),
// c_n = (1 + Re <phi1|phi2>^n)^{-1/2}.
TrialState build_trial_state(const StatePair& pair, int n);

// F(N^{tensor n}, psi_n) = (c_n^4/4) sum_{a,b in {w,x,y,z}} (a^+ b)^n. The sum
// is evaluated with the dominant modulus factored out; the value itself
// underflows double for large n once the fidelity drops below ~1e-308.
double trial_fidelity(const Channel& channel, const StatePair& pair, long n);

// F(N^{tensor n}, psi_n)^{1/n} computed in log space; stable up to n ~ 1e6.
double trial_fidelity_root(const Channel& channel, const StatePair& pair, long n);

// Dicke coefficients of psi_n for a qubit pair (throws LinearlyDependentPair).
SymmetricState trial_dicke_coefficients(const StatePair& pair, int n);

// Multiply phi1 by a phase so that N_1212 = <phi1| N(|phi2><phi1|) |phi2>
// becomes real and non-negative; returns the pair unchanged when N_1212 = 0.
StatePair fix_phase(const Channel& channel, const StatePair& pair);

}  // namespace qfid
