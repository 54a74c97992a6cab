// channel.cpp — Kraus-form channel algebra

#include "qfid/channel.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>
#include <utility>

namespace qfid {

namespace {

double spectral_norm_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

// ||sum A^dagger A - I||_inf for an explicit Kraus list.
double tp_residual_of(const std::vector<Matrix>& kraus, Index dim) {
  Matrix s = Matrix::Zero(dim, dim);
  for (const auto& a : kraus) s.noalias() += a.adjoint() * a;
  s -= Matrix::Identity(dim, dim);
  return spectral_norm_hermitian(Matrix(0.5 * (s + s.adjoint())));
}

void check_square_equal(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw DimensionMismatch("channel needs at least one Kraus operator");
  const Index d = kraus.front().rows();
  for (const auto& a : kraus) {
    if (a.rows() != a.cols() || a.rows() != d)
      throw DimensionMismatch("Kraus operators must be square and of equal size");
    if (!a.allFinite()) throw DimensionMismatch("Kraus operator has non-finite entries");
  }
}

double entries_of_kraus_list(double k, double d) { return k * d * d; }

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw DimensionMismatch("pure state must have dimension >= 1");
  const double n = amp_.norm();
  if (std::abs(n - 1.0) > tol::state_norm)
    throw DimensionMismatch("pure state is not normalized: ||psi|| = " + std::to_string(n));
}

PureState PureState::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0 || !amplitudes.allFinite())
    throw DimensionMismatch("cannot normalize a zero or non-finite vector");
  return PureState(amplitudes / n, Unchecked{});
}

// ------------------------------------------------------------------ Channel

Channel Channel::from_kraus(std::vector<Matrix> kraus, bool require_tp) {
  check_square_equal(kraus);
  const Index d = kraus.front().rows();
  const double residual = tp_residual_of(kraus, d);
  const bool tp = residual <= tol::trace_preserving;
  if (require_tp && !tp)
    throw NotTracePreserving("sum A^dagger A deviates from identity by " + std::to_string(residual));
  return Channel(std::move(kraus), d, tp, residual);
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw DimensionMismatch("apply: operator size does not match channel dimension");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& a : kraus_) out.noalias() += a * rho * a.adjoint();
  return out;
}

Channel Channel::adjoint() const {
  std::vector<Matrix> adj;
  adj.reserve(kraus_.size());
  for (const auto& a : kraus_) adj.push_back(a.adjoint());
  const double residual = tp_residual_of(adj, dim_);
  return Channel(std::move(adj), dim_, residual <= tol::trace_preserving, residual);
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.dim() != inner.dim())
    throw DimensionMismatch("compose: channel dimensions differ");
  const double total = entries_of_kraus_list(
      static_cast<double>(outer.kraus_count()) * static_cast<double>(inner.kraus_count()),
      static_cast<double>(outer.dim()));
  if (total > budget::kraus_entries)
    throw BudgetExceeded("compose: composed Kraus list exceeds the memory budget");
  std::vector<Matrix> kraus;
  kraus.reserve(outer.kraus_count() * inner.kraus_count());
  for (const auto& a : outer.kraus_ops())
    for (const auto& b : inner.kraus_ops()) kraus.push_back(a * b);
  // sum (AB)^dagger AB = sum B^dagger (sum A^dagger A) B, so the residual is
  // bounded by r_inner + r_outer (1 + r_inner) without recomputation.
  const double residual = inner.tp_residual() + outer.tp_residual() * (1.0 + inner.tp_residual());
  return Channel(std::move(kraus), outer.dim(), residual <= tol::trace_preserving, residual);
}

Channel tensor(const Channel& a, const Channel& b) {
  const double dim = static_cast<double>(a.dim()) * static_cast<double>(b.dim());
  const double total = entries_of_kraus_list(
      static_cast<double>(a.kraus_count()) * static_cast<double>(b.kraus_count()), dim);
  if (total > budget::kraus_entries)
    throw BudgetExceeded("tensor: Kraus list exceeds the memory budget");
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus_count() * b.kraus_count());
  for (const auto& u : a.kraus_ops())
    for (const auto& v : b.kraus_ops()) kraus.push_back(Eigen::kroneckerProduct(u, v).eval());
  const double residual = a.tp_residual() + b.tp_residual() + a.tp_residual() * b.tp_residual();
  return Channel(std::move(kraus), a.dim() * b.dim(),
                 residual <= tol::trace_preserving, residual);
}

Channel tensor_power(const Channel& channel, int copies) {
  if (copies < 1) throw DimensionMismatch("tensor_power: need copies >= 1");
  const double k = static_cast<double>(channel.kraus_count());
  const double d = static_cast<double>(channel.dim());
  const double total = std::pow(k, copies) * std::pow(d, 2.0 * copies);
  if (total > budget::kraus_entries)
    throw BudgetExceeded("tensor_power: K^n d^(2n) = " + std::to_string(total) +
                         " complex entries exceeds the memory budget");
  Channel out = channel;
  for (int i = 1; i < copies; ++i) out = tensor(out, channel);
  return out;
}

// ----------------------------------------------------------------- fidelity

double fidelity(const Channel& channel, const Vector& psi) {
  if (psi.size() != channel.dim())
    throw DimensionMismatch("fidelity: state dimension does not match channel");
  double f = 0.0;
  for (const auto& a : channel.kraus_ops()) f += std::norm(psi.dot(a * psi));
  return f;
}

double fidelity(const Channel& channel, const PureState& psi) {
  return fidelity(channel, psi.amplitudes());
}

Vector fidelity_gradient(const Channel& channel, const Vector& psi) {
  if (psi.size() != channel.dim())
    throw DimensionMismatch("fidelity_gradient: state dimension does not match channel");
  Vector g = Vector::Zero(psi.size());
  for (const auto& a : channel.kraus_ops()) {
    const Vector ap = a * psi;
    const Complex av = psi.dot(ap);  // <psi|A|psi>
    g.noalias() += std::conj(av) * ap;
    g.noalias() += av * (a.adjoint() * psi);
  }
  return g;
}

Vector fidelity_gradient(const Channel& channel, const PureState& psi) {
  return fidelity_gradient(channel, psi.amplitudes());
}

// ------------------------------------------------------ natural representation

TransferMatrix natural_representation(const Channel& channel) {
  const Index d = channel.dim();
  Matrix t = Matrix::Zero(d * d, d * d);
  for (const auto& a : channel.kraus_ops())
    t.noalias() += Eigen::kroneckerProduct(a, a.conjugate()).eval();
  return TransferMatrix{d, std::move(t)};
}

Vector pair_vector(const Vector& psi) {
  const Index d = psi.size();
  Vector v(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) v(i * d + j) = psi(i) * std::conj(psi(j));
  return v;
}

std::pair<double, PureState> dominant_eigenpair(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols())
    throw NotHermitian("dominant_eigenpair: matrix is not square");
  const double dev = (hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::hermitian)
    throw NotHermitian("dominant_eigenpair: matrix deviates from Hermitian by " +
                       std::to_string(dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
  const Index last = hermitian.rows() - 1;  // eigenvalues sorted ascending
  return {es.eigenvalues()(last), PureState::normalized(es.eigenvectors().col(last))};
}

}  // namespace qfid
