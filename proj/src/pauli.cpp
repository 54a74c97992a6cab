// pauli.cpp — Pauli-channel closed forms

#include "qfid/pauli.hpp"

#include "qfid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfid {

namespace {

void validate_probabilities(const PauliChannel& p) {
  double sum = 0.0;
  for (double v : p.p) {
    if (!(v >= 0.0))
      throw InvalidProbabilities("p: probabilities must be non-negative, got " + std::to_string(v));
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidProbabilities("p: probabilities sum to " + std::to_string(sum) + ", expected 1");
}

void require_canonical(const PauliChannel& p, const char* where) {
  validate_probabilities(p);
  if (!(p.p[1] <= p.p[2] && p.p[2] <= p.p[3]))
    throw NotCanonical(std::string(where) + ": requires canonical order p1 <= p2 <= p3");
}

}  // namespace

Matrix pauli_matrix(int alpha) {
  Matrix m(2, 2);
  switch (alpha) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DimensionMismatch("pauli_matrix: index must be 0..3");
  }
  return m;
}

CanonicalPauli canonicalize(const PauliChannel& p) {
  validate_probabilities(p);
  std::array<int, 3> perm{1, 2, 3};
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return p.p[a] < p.p[b]; });
  PauliChannel out;
  out.p[0] = p.p[0];
  for (int i = 0; i < 3; ++i) out.p[i + 1] = p.p[perm[i]];
  return CanonicalPauli{out, perm};
}

bool is_canonical(const PauliChannel& p) {
  return p.p[1] <= p.p[2] && p.p[2] <= p.p[3];
}

double nu_infty_closed(const PauliChannel& canonical) {
  require_canonical(canonical, "nu_infty_closed");
  const auto& p = canonical.p;
  return p[0] >= p[2] ? p[0] + p[3] : p[2] + p[3];
}

double f_tilde_closed(const PauliChannel& canonical) {
  require_canonical(canonical, "f_tilde_closed");
  const auto& p = canonical.p;
  return p[0] >= p[2] ? p[0] + p[3] : p[2] + p[3];
}

double trial_fidelity_closed(const PauliChannel& canonical, long n) {
  require_canonical(canonical, "trial_fidelity_closed");
  if (n < 1) throw DimensionMismatch("trial_fidelity_closed: need n >= 1");
  const auto& p = canonical.p;
  std::array<double, 4> base{p[0] + p[1], p[0] - p[1], p[3] - p[2], p[3] + p[2]};
  double scale = 0.0;
  for (double b : base) scale = std::max(scale, std::abs(b));
  if (scale == 0.0) return 0.0;

  std::array<double, 4> term{};
  for (int i = 0; i < 4; ++i)
    term[i] = std::pow(base[i] / scale, static_cast<double>(n));
  // Sum smallest magnitudes first; the negative odd-power terms are each
  // dominated by their positive partner, so the total stays positive.
  std::sort(term.begin(), term.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  double sum = 0.0;
  for (double t : term) sum += t;
  if (!(sum > 0.0))
    throw NonFiniteObjective("trial_fidelity_closed: non-positive term sum");
  return scale * std::exp((std::log(sum) - std::log(2.0)) / static_cast<double>(n));
}

PauliChannel epsilon_channel(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0 / 3.0))
    throw EpsilonOutOfRange("epsilon_channel: eps must lie in [0, 1/3], got " + std::to_string(eps));
  return PauliChannel{{1.0 / 3.0 - eps, 0.0, 1.0 / 3.0, 1.0 / 3.0 + eps}};
}

double crossover_n0(double eps) {
  if (!(eps > 0.0))
    throw EpsilonOutOfRange("crossover_n0: eps must be positive");
  return std::log(4.0) / (3.0 * eps);
}

std::optional<double> epsilon_of(const PauliChannel& p, double tolerance) {
  const double eps = p.p[3] - 1.0 / 3.0;
  if (std::abs(p.p[1]) > tolerance) return std::nullopt;
  if (std::abs(p.p[2] - 1.0 / 3.0) > tolerance) return std::nullopt;
  if (std::abs(p.p[0] - (1.0 / 3.0 - eps)) > tolerance) return std::nullopt;
  if (eps < -tolerance || eps > 1.0 / 3.0 + tolerance) return std::nullopt;
  return eps;
}

Channel to_channel(const PauliChannel& p) {
  validate_probabilities(p);
  std::vector<Matrix> kraus;
  kraus.reserve(4);
  for (int a = 0; a < 4; ++a) kraus.push_back(std::sqrt(p.p[a]) * pauli_matrix(a));
  return Channel::from_kraus(std::move(kraus), true);
}

}  // namespace qfid
