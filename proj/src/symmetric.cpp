// symmetric.cpp — Symmetric tensor-power machinery

#include "qfid/symmetric.hpp"

#include "qfid/combinatorics.hpp"
#include "qfid/errors.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace qfid {

namespace {

void check_symmetric_state(const SymmetricState& s) {
  if (s.n < 1) throw DimensionMismatch("symmetric state: need n >= 1");
  if (s.coeffs.size() != s.n + 1)
    throw DimensionMismatch("symmetric state: expected n+1 Dicke coefficients");
  const double nrm = s.coeffs.norm();
  if (std::abs(nrm - 1.0) > tol::state_norm)
    throw DimensionMismatch("symmetric state: coefficients are not normalized");
}

void check_qubit_channel(const Channel& channel, const char* where) {
  if (channel.dim() != 2)
    throw DimensionMismatch(std::string(where) + ": symmetric machinery is qubit-only (d = 2)");
}

int excitation_of_ket(const OccupationIndex& m) { return m[2] + m[3]; }   // k = m10 + m11
int excitation_of_bra(const OccupationIndex& m) { return m[1] + m[3]; }   // l = m01 + m11

// Compositions of each degree 0..n in the shared (descending, m00-major)
// order, plus a dense rank lookup keyed by the first three parts.
struct CompositionTable {
  int n = 0;
  std::vector<std::vector<OccupationIndex>> comps;
  std::vector<std::vector<int>> rank;

  explicit CompositionTable(int total) : n(total) {
    comps.resize(n + 1);
    rank.resize(n + 1);
    const int stride = n + 1;
    for (int degree = 0; degree <= n; ++degree) {
      rank[degree].assign(stride * stride * stride, -1);
      auto& list = comps[degree];
      for (int a = degree; a >= 0; --a)
        for (int b = degree - a; b >= 0; --b)
          for (int c = degree - a - b; c >= 0; --c) {
            const int d = degree - a - b - c;
            rank[degree][(a * stride + b) * stride + c] = static_cast<int>(list.size());
            list.push_back(OccupationIndex{a, b, c, d});
          }
    }
  }

  int rank_of(int degree, int a, int b, int c) const {
    const int stride = n + 1;
    return rank[degree][(a * stride + b) * stride + c];
  }
};

// Coefficients of prod_a (sum_b T(a,b) v_b)^{m_a} over the degree-n
// compositions. This iterated expansion realizes the contingency-table sum:
// the coefficient of v^{m'} collects prod_a [m_a!/prod_b k_ab!] prod T^k_ab
// over all tables with row sums m and column sums m'.
std::vector<Complex> row_polynomial(const Matrix& t4, const OccupationIndex& m,
                                    const CompositionTable& tab) {
  std::vector<Complex> cur{Complex(1.0)};
  int degree = 0;
  for (int a = 0; a < 4; ++a) {
    for (int rep = 0; rep < m[a]; ++rep) {
      const auto& targets = tab.comps[degree + 1];
      std::vector<Complex> next(targets.size(), Complex(0.0));
      for (std::size_t idx = 0; idx < targets.size(); ++idx) {
        const auto& t = targets[idx];
        Complex acc(0.0);
        for (int b = 0; b < 4; ++b) {
          if (t[b] == 0) continue;
          const Complex w = t4(a, b);
          if (w == Complex(0.0)) continue;
          OccupationIndex src = t;
          --src[b];
          acc += w * cur[tab.rank_of(degree, src[0], src[1], src[2])];
        }
        next[idx] = acc;
      }
      cur.swap(next);
      ++degree;
    }
  }
  return cur;
}

double log_mult(int n, const OccupationIndex& m) {
  return log_multinomial4(n, m[0], m[1], m[2], m[3]);
}

}  // namespace

std::vector<OccupationIndex> enumerate_occupations(int n) {
  if (n < 1) throw DimensionMismatch("enumerate_occupations: need n >= 1");
  std::vector<OccupationIndex> out;
  out.reserve(static_cast<std::size_t>(occupation_count(n)));
  for (int a = n; a >= 0; --a)
    for (int b = n - a; b >= 0; --b)
      for (int c = n - a - b; c >= 0; --c) out.push_back(OccupationIndex{a, b, c, n - a - b - c});
  return out;
}

Index occupation_count(int n) {
  return static_cast<Index>((static_cast<long>(n) + 3) * (n + 2) * (n + 1) / 6);
}

Vector pair_embedding(const SymmetricState& s) {
  check_symmetric_state(s);
  const int n = s.n;
  const auto basis = enumerate_occupations(n);
  Vector phi(static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& m = basis[i];
    const int k = excitation_of_ket(m);
    const int l = excitation_of_bra(m);
    const double gamma =
        std::exp(0.5 * (log_mult(n, m) - log_binomial(n, k) - log_binomial(n, l)));
    phi(static_cast<Index>(i)) = gamma * s.coeffs(k) * std::conj(s.coeffs(l));
  }
  return phi;
}

SymmetricTransferMatrix symmetric_transfer(const TransferMatrix& t, int n) {
  if (t.local_dim != 2 || t.mat.rows() != 4 || t.mat.cols() != 4)
    throw DimensionMismatch("symmetric_transfer: expects the 4x4 transfer matrix of a qubit channel");
  if (n < 1) throw DimensionMismatch("symmetric_transfer: need n >= 1");
  const double size = static_cast<double>(occupation_count(n));
  if (size * size > budget::symmetric_entries)
    throw BudgetExceeded("symmetric_transfer: C(n+3,3)^2 exceeds the memory cap at n = " +
                         std::to_string(n));

  SymmetricTransferMatrix out;
  out.n = n;
  out.basis = enumerate_occupations(n);
  const Index dim = static_cast<Index>(out.basis.size());
  out.entries.resize(dim, dim);

  const CompositionTable tab(n);
  std::vector<double> half_log_mult(out.basis.size());
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    half_log_mult[i] = 0.5 * log_mult(n, out.basis[i]);

  for (Index r = 0; r < dim; ++r) {
    const auto poly = row_polynomial(t.mat, out.basis[static_cast<std::size_t>(r)], tab);
    for (Index c = 0; c < dim; ++c)
      out.entries(r, c) = std::exp(half_log_mult[static_cast<std::size_t>(r)] -
                                   half_log_mult[static_cast<std::size_t>(c)]) *
                          poly[static_cast<std::size_t>(c)];
  }
  return out;
}

// ------------------------------------------------------------- DickeTransfer

DickeTransfer::DickeTransfer(const Channel& channel, int n) : n_(n) {
  check_qubit_channel(channel, "DickeTransfer");
  if (n < 1) throw DimensionMismatch("DickeTransfer: need n >= 1");
  const double size = static_cast<double>(occupation_count(n));
  if (size * size > budget::symmetric_entries)
    throw BudgetExceeded("DickeTransfer: symmetric subspace exceeds the memory cap at n = " +
                         std::to_string(n));

  const Matrix t4 = natural_representation(channel).mat;
  const auto basis = enumerate_occupations(n);
  const CompositionTable tab(n);
  const Index dim = static_cast<Index>(n) + 1;
  t_dicke_ = Matrix::Zero(dim * dim, dim * dim);

  // Per-column group factors 1/sqrt(C(n,k') C(n,l')) and group ids.
  std::vector<int> group(basis.size());
  std::vector<double> row_weight(basis.size());
  Eigen::VectorXd col_factor(dim * dim);
  for (Index k = 0; k < dim; ++k)
    for (Index l = 0; l < dim; ++l)
      col_factor(k * dim + l) = std::exp(
          -0.5 * (log_binomial(n, static_cast<int>(k)) + log_binomial(n, static_cast<int>(l))));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int k = excitation_of_ket(basis[i]);
    const int l = excitation_of_bra(basis[i]);
    group[i] = static_cast<int>(k * dim + l);
    row_weight[i] = std::exp(log_mult(n, basis[i]) -
                             0.5 * (log_binomial(n, k) + log_binomial(n, l)));
  }

  Vector acc(dim * dim);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto poly = row_polynomial(t4, basis[r], tab);
    acc.setZero();
    for (std::size_t c = 0; c < basis.size(); ++c) acc(group[c]) += poly[c];
    t_dicke_.row(group[r]) += row_weight[r] * (acc.array() * col_factor.array().cast<Complex>())
                                  .matrix()
                                  .transpose();
  }
  herm_ = 0.5 * (t_dicke_ + t_dicke_.adjoint());
}

double DickeTransfer::fidelity(const Vector& c, Vector* grad, double* imag_part) const {
  const Index dim = static_cast<Index>(n_) + 1;
  if (c.size() != dim) throw DimensionMismatch("DickeTransfer: coefficient vector has wrong size");

  Vector w(dim * dim);
  for (Index k = 0; k < dim; ++k)
    for (Index l = 0; l < dim; ++l) w(k * dim + l) = c(k) * std::conj(c(l));

  double value;
  Vector u = herm_ * w;  // Re(w^+ T w) = w^+ H w, and H w also carries the gradient
  if (imag_part) {
    const Complex form = w.dot(t_dicke_ * w);
    *imag_part = form.imag();
    value = form.real();
  } else {
    value = w.dot(u).real();
  }

  if (grad) {
    Matrix u_mat(dim, dim);
    for (Index k = 0; k < dim; ++k)
      for (Index l = 0; l < dim; ++l) u_mat(k, l) = u(k * dim + l);
    *grad = u_mat * c + u_mat.adjoint() * c;
  }
  return value;
}

// ------------------------------------------------------- fidelity evaluation

namespace {

double checked_symmetric_fidelity(const DickeTransfer& transfer, const SymmetricState& s,
                                  Vector* grad) {
  check_symmetric_state(s);
  if (transfer.copies() != s.n)
    throw DimensionMismatch("symmetric fidelity: transfer was built for a different n");
  double imag = 0.0;
  const double value = transfer.fidelity(s.coeffs, grad, &imag);
  if (std::abs(imag) >= 1e-8)
    throw NonFiniteObjective("symmetric fidelity: quadratic form has imaginary part " +
                             std::to_string(imag));
  return value;
}

}  // namespace

double symmetric_fidelity(const DickeTransfer& transfer, const SymmetricState& s) {
  return checked_symmetric_fidelity(transfer, s, nullptr);
}

double symmetric_fidelity(const Channel& channel, const SymmetricState& s) {
  return symmetric_fidelity(DickeTransfer(channel, s.n), s);
}

Vector symmetric_fidelity_gradient(const DickeTransfer& transfer, const SymmetricState& s) {
  Vector grad;
  checked_symmetric_fidelity(transfer, s, &grad);
  return grad;
}

Vector symmetric_fidelity_gradient(const Channel& channel, const SymmetricState& s) {
  return symmetric_fidelity_gradient(DickeTransfer(channel, s.n), s);
}

SymmetricMaxResult max_symmetric_fidelity(const Channel& channel, int n,
                                          const OptimizerOptions& opts) {
  const DickeTransfer transfer(channel, n);
  auto objective = [&transfer](const Vector& x, Vector& grad) {
    return transfer.fidelity(x, &grad, nullptr);
  };
  SymmetricMaxResult out;
  out.raw = bb_maximize(static_cast<Index>(n) + 1, objective, opts);
  out.fidelity_root = std::pow(out.raw.value, 1.0 / static_cast<double>(n));
  out.argmax = SymmetricState{n, out.raw.argmax};
  return out;
}

PureState expand(const SymmetricState& s) {
  check_symmetric_state(s);
  if (s.n > budget::expand_max_copies)
    throw BudgetExceeded("expand: 2^n amplitudes exceed the full-space budget");
  const Index full = Index(1) << s.n;
  Vector amp(full);
  for (Index i = 0; i < full; ++i) {
    const int k = std::popcount(static_cast<unsigned long long>(i));
    amp(i) = s.coeffs(k) * std::exp(-0.5 * log_binomial(s.n, k));
  }
  return PureState::normalized(std::move(amp));
}

}  // namespace qfid
