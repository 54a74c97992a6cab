// trial_states.cpp — Trial-state constructions and the 16-term fidelity sum

#include "qfid/trial_states.hpp"

#include "qfid/combinatorics.hpp"
#include "qfid/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace qfid {

StatePair::StatePair(PureState a, PureState b)
    : phi1(std::move(a)), phi2(std::move(b)), overlap(0.0) {
  if (phi1.dim() != phi2.dim())
    throw DimensionMismatch("state pair: dimensions differ");
  overlap = phi1.amplitudes().dot(phi2.amplitudes());
}

bool linearly_dependent(const StatePair& pair) {
  return 1.0 - std::abs(pair.overlap) < tol::dependent_pair;
}

KrausVectors kraus_vectors(const Channel& channel, const StatePair& pair) {
  if (pair.phi1.dim() != channel.dim())
    throw DimensionMismatch("kraus_vectors: pair dimension does not match channel");
  const Index k = static_cast<Index>(channel.kraus_count());
  KrausVectors out{Vector(k), Vector(k), Vector(k), Vector(k)};
  const Vector& p1 = pair.phi1.amplitudes();
  const Vector& p2 = pair.phi2.amplitudes();
  for (Index v = 0; v < k; ++v) {
    const Matrix& a = channel.kraus(static_cast<std::size_t>(v));
    out.w(v) = p1.dot(a * p1);
    out.x(v) = p1.dot(a * p2);
    out.y(v) = p2.dot(a * p1);
    out.z(v) = p2.dot(a * p2);
  }
  return out;
}

PairCoefficients channel_pair_coefficients(const Channel& channel, const StatePair& pair) {
  const KrausVectors r = kraus_vectors(channel, pair);
  auto vec_of = [&r](int i, int j) -> const Vector& {
    if (i == 1) return j == 1 ? r.w : r.x;
    return j == 1 ? r.y : r.z;
  };
  const Vector& p1 = pair.phi1.amplitudes();
  const Vector& p2 = pair.phi2.amplitudes();
  auto state = [&](int i) -> const Vector& { return i == 1 ? p1 : p2; };

  PairCoefficients out;
  double worst = 0.0;
  double scale = 1.0;
  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k) {
      const Matrix through = channel.apply(state(j) * state(k).adjoint());
      for (int i = 1; i <= 2; ++i)
        for (int l = 1; l <= 2; ++l) {
          const Complex via_kraus = vec_of(l, k).dot(vec_of(i, j));
          const Complex direct = state(i).dot(through * state(l));
          out.at(i, j, k, l) = via_kraus;
          worst = std::max(worst, std::abs(via_kraus - direct));
          scale = std::max(scale, std::abs(via_kraus));
        }
    }
  if (worst > 1e-12 * scale)
    throw NonFiniteObjective("pair coefficients: Kraus and direct routes disagree by " +
                             std::to_string(worst));
  return out;
}

TrialState build_trial_state(const StatePair& pair, int n) {
  if (n < 1) throw DimensionMismatch("build_trial_state: need n >= 1");
  const double dim = std::pow(static_cast<double>(pair.phi1.dim()), n);
  if (dim > static_cast<double>(Index(1) << budget::expand_max_copies))
    throw BudgetExceeded("build_trial_state: d^n amplitudes exceed the full-space budget");

  Vector t1 = pair.phi1.amplitudes();
  Vector t2 = pair.phi2.amplitudes();
  for (int i = 1; i < n; ++i) {
    t1 = Eigen::kroneckerProduct(t1, pair.phi1.amplitudes()).eval();
    t2 = Eigen::kroneckerProduct(t2, pair.phi2.amplitudes()).eval();
  }
  if (linearly_dependent(pair)) return TrialState{PureState::normalized(std::move(t1)), true};

  const Complex ov_n = std::pow(pair.overlap, n);
  const double c_n = 1.0 / std::sqrt(1.0 + ov_n.real());
  return TrialState{PureState::normalized((c_n / std::sqrt(2.0)) * (t1 + t2)), false};
}

namespace {

struct TrialSum {
  double log_scale;  // n * log of the dominant pair modulus
  Complex reduced;   // sum of (t/s)^n over the 16 pairs
  double log_cn4;    // 4 log c_n
};

TrialSum trial_sum(const Channel& channel, const StatePair& pair, long n) {
  const KrausVectors r = kraus_vectors(channel, pair);
  const std::array<const Vector*, 4> vecs{&r.w, &r.x, &r.y, &r.z};

  std::array<Complex, 16> terms;
  double scale = 0.0;
  int idx = 0;
  for (const Vector* a : vecs)
    for (const Vector* b : vecs) {
      terms[idx] = a->dot(*b);
      scale = std::max(scale, std::abs(terms[idx]));
      ++idx;
    }

  TrialSum out{0.0, Complex(0.0), 0.0};
  const Complex ov_n = std::pow(pair.overlap, static_cast<double>(n));
  out.log_cn4 = -2.0 * std::log1p(ov_n.real());
  if (scale == 0.0) return out;
  out.log_scale = static_cast<double>(n) * std::log(scale);
  for (const Complex& t : terms) {
    const double mod = std::abs(t);
    if (mod == 0.0) continue;
    const double log_ratio = std::log(mod / scale);
    out.reduced += std::polar(std::exp(static_cast<double>(n) * log_ratio),
                              static_cast<double>(n) * std::arg(t));
  }
  if (std::abs(out.reduced.imag()) >= 1e-8 * std::max(1.0, std::abs(out.reduced.real())))
    throw NonFiniteObjective("trial fidelity: 16-term sum has imaginary part " +
                             std::to_string(out.reduced.imag()));
  return out;
}

}  // namespace

double trial_fidelity(const Channel& channel, const StatePair& pair, long n) {
  if (n < 1) throw DimensionMismatch("trial_fidelity: need n >= 1");
  if (linearly_dependent(pair)) {
    const double f1 = fidelity(channel, pair.phi1);
    return std::pow(f1, static_cast<double>(n));
  }
  const TrialSum s = trial_sum(channel, pair, n);
  if (!(s.reduced.real() > 0.0)) return 0.0;
  return std::exp(s.log_cn4 - std::log(4.0) + s.log_scale + std::log(s.reduced.real()));
}

double trial_fidelity_root(const Channel& channel, const StatePair& pair, long n) {
  if (n < 1) throw DimensionMismatch("trial_fidelity_root: need n >= 1");
  if (linearly_dependent(pair)) return fidelity(channel, pair.phi1);
  const TrialSum s = trial_sum(channel, pair, n);
  if (!(s.reduced.real() > 0.0)) return 0.0;
  const double log_f = s.log_cn4 - std::log(4.0) + s.log_scale + std::log(s.reduced.real());
  return std::exp(log_f / static_cast<double>(n));
}

SymmetricState trial_dicke_coefficients(const StatePair& pair, int n) {
  if (pair.phi1.dim() != 2)
    throw DimensionMismatch("trial_dicke_coefficients: qubit pairs only");
  if (n < 1) throw DimensionMismatch("trial_dicke_coefficients: need n >= 1");
  if (linearly_dependent(pair))
    throw LinearlyDependentPair("trial_dicke_coefficients: pair is linearly dependent");

  // phi = a|0> + b|1>  =>  phi^{tensor n} has Dicke coefficients
  // sqrt(C(n,k)) a^{n-k} b^k.
  const Complex a1 = pair.phi1.amplitudes()(0), b1 = pair.phi1.amplitudes()(1);
  const Complex a2 = pair.phi2.amplitudes()(0), b2 = pair.phi2.amplitudes()(1);
  const Complex ov_n = std::pow(pair.overlap, n);
  const double c_n = 1.0 / std::sqrt(1.0 + ov_n.real());

  Vector coeffs(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double root_binom = std::exp(0.5 * log_binomial(n, k));
    const Complex one = std::pow(a1, n - k) * std::pow(b1, k);
    const Complex two = std::pow(a2, n - k) * std::pow(b2, k);
    coeffs(k) = (c_n / std::sqrt(2.0)) * root_binom * (one + two);
  }
  coeffs /= coeffs.norm();  // exact up to roundoff already
  return SymmetricState{n, std::move(coeffs)};
}

StatePair fix_phase(const Channel& channel, const StatePair& pair) {
  const KrausVectors r = kraus_vectors(channel, pair);
  const Complex n1212 = r.y.dot(r.x);  // <phi1| N(|phi2><phi1|) |phi2>
  if (std::abs(n1212) == 0.0) return pair;
  // phi1 -> e^{i theta} phi1 maps N_1212 to e^{-2 i theta} N_1212.
  const double theta = 0.5 * std::arg(n1212);
  const Complex phase = std::polar(1.0, theta);
  return StatePair(PureState::normalized(phase * pair.phi1.amplitudes()), pair.phi2);
}

}  // namespace qfid
