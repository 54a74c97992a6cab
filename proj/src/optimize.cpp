// optimize.cpp — BB sphere ascent and alternating eigenvector ascent

#include "qfid/optimize.hpp"

#include "qfid/errors.hpp"
#include "qfid/rng.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qfid {

void validate(const OptimizerOptions& opts) {
  if (opts.restarts < 1) throw DimensionMismatch("optimizer: restarts must be >= 1");
  if (opts.max_iters < 1) throw DimensionMismatch("optimizer: max_iters must be >= 1");
  if (!(opts.grad_tol > 0.0)) throw DimensionMismatch("optimizer: grad_tol must be > 0");
  if (!(opts.step_min > 0.0) || opts.step_min > opts.step_max)
    throw DimensionMismatch("optimizer: need 0 < step_min <= step_max");
  if (opts.stall_window < 1 || !(opts.stall_rtol >= 0.0))
    throw DimensionMismatch("optimizer: need stall_window >= 1 and stall_rtol >= 0");
}

namespace {

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  Vector argmax;
  long iterations = 0;
  bool converged = false;
};

double checked_eval(const SphereObjective& f, const Vector& x, Vector& grad) {
  const double v = f(x, grad);
  if (!std::isfinite(v) || !grad.allFinite())
    throw NonFiniteObjective("objective returned a non-finite value or gradient");
  return v;
}

Vector tangent_part(const Vector& x, const Vector& g) {
  return g - x.dot(g).real() * x;
}

RestartOutcome bb_single(Index dim, const SphereObjective& f,
                         const OptimizerOptions& opts, std::uint64_t seed) {
  Rng rng(seed);
  Vector x = rng.haar_vector(dim);
  Vector g(dim), g_new(dim);

  double value = checked_eval(f, x, g);
  Vector gt = tangent_part(x, g);

  RestartOutcome out;
  out.value = value;
  out.argmax = x;
  out.converged = gt.norm() <= opts.grad_tol;

  double alpha = opts.step_min * 10.0;
  bool use_first_formula = true;
  long iter = 0;
  double window_best = out.value;
  while (!out.converged && iter < opts.max_iters) {
    ++iter;
    Vector x_new = x + alpha * gt;
    x_new /= x_new.norm();
    const double value_new = checked_eval(f, x_new, g_new);
    Vector gt_new = tangent_part(x_new, g_new);

    const Vector dx = x_new - x;
    const Vector dg = gt_new - gt;
    const double sy = std::abs(dx.dot(dg).real());
    const double ss = dx.squaredNorm();
    const double yy = dg.squaredNorm();
    double next = opts.step_min;
    if (use_first_formula) {
      if (sy > 0.0) next = ss / sy;
    } else {
      if (yy > 0.0) next = sy / yy;
    }
    use_first_formula = !use_first_formula;
    alpha = std::clamp(next, opts.step_min, opts.step_max);

    if (value_new > out.value) {
      out.value = value_new;
      out.argmax = x_new;
    }
    x.swap(x_new);
    gt.swap(gt_new);
    out.converged = gt.norm() <= opts.grad_tol;

    if (!out.converged && iter % opts.stall_window == 0) {
      if (out.value - window_best <= opts.stall_rtol * std::abs(out.value)) break;
      window_best = out.value;
    }
  }
  out.iterations = iter;
  return out;
}

}  // namespace

MaximizationResult bb_maximize(Index dim, const SphereObjective& objective,
                               const OptimizerOptions& opts) {
  validate(opts);
  if (dim < 1) throw DimensionMismatch("bb_maximize: dimension must be >= 1");

  MaximizationResult best;
  best.value = -std::numeric_limits<double>::infinity();
  best.restarts_used = opts.restarts;
  for (int r = 0; r < opts.restarts; ++r) {
    RestartOutcome o = bb_single(dim, objective, opts, derive_seed(opts.seed, r));
    if (o.value > best.value) {
      best.value = o.value;
      best.argmax = std::move(o.argmax);
      best.iterations = o.iterations;
      best.converged = o.converged;
    }
  }
  return best;
}

MaximizationResult max_fidelity(const Channel& channel, const OptimizerOptions& opts) {
  auto objective = [&channel](const Vector& x, Vector& grad) {
    grad = fidelity_gradient(channel, x);
    return fidelity(channel, x);
  };
  return bb_maximize(channel.dim(), objective, opts);
}

namespace {

// F(N^{(x)n}, psi) over the full d^n sphere without materializing the K^n
// Kraus list: rho = psi psi^+ as the pair-site vector Psi with
// Psi[(i_1 j_1)...(i_n j_n)] = rho_{ij}, to which the single-copy transfer
// matrix T applies one site at a time. Gradient
// g = [N^{(x)n}(rho) + (N^+)^{(x)n}(rho)] psi.
class TensorPowerObjective {
 public:
  TensorPowerObjective(const Channel& channel, int copies)
      : d_(channel.dim()),
        copies_(copies),
        t_(natural_representation(channel).mat),
        t_adj_(natural_representation(channel.adjoint()).mat) {
    full_ = 1;
    for (int i = 0; i < copies_; ++i) full_ *= d_;
    pair_dim_ = full_ * full_;
    to_pair_.resize(static_cast<std::size_t>(pair_dim_));
    for (Index i = 0; i < full_; ++i)
      for (Index j = 0; j < full_; ++j) {
        Index ii = i, jj = j, place = 1, pair = 0;
        for (int site = 0; site < copies_; ++site) {
          pair += (ii % d_ * d_ + jj % d_) * place;
          ii /= d_;
          jj /= d_;
          place *= d_ * d_;
        }
        to_pair_[static_cast<std::size_t>(i * full_ + j)] = pair;
      }
  }

  Index dim() const { return full_; }

  double operator()(const Vector& x, Vector& grad) const {
    Vector psi = embed(x);
    Vector scratch(pair_dim_);
    apply_sites(t_, psi, scratch);
    const Matrix out = extract(psi);

    psi = embed(x);
    apply_sites(t_adj_, psi, scratch);
    const Matrix back = extract(psi);

    grad = (out + back) * x;
    return x.dot(out * x).real();
  }

 private:
  Vector embed(const Vector& x) const {
    Vector psi(pair_dim_);
    for (Index i = 0; i < full_; ++i)
      for (Index j = 0; j < full_; ++j)
        psi(to_pair_[static_cast<std::size_t>(i * full_ + j)]) = x(i) * std::conj(x(j));
    return psi;
  }

  Matrix extract(const Vector& psi) const {
    Matrix m(full_, full_);
    for (Index i = 0; i < full_; ++i)
      for (Index j = 0; j < full_; ++j)
        m(i, j) = psi(to_pair_[static_cast<std::size_t>(i * full_ + j)]);
    return m;
  }

  void apply_sites(const Matrix& t, Vector& v, Vector& scratch) const {
    const Index letters = d_ * d_;
    Index stride = 1;
    for (int site = 0; site < copies_; ++site) {
      const Index block = letters * stride;
      for (Index base = 0; base < pair_dim_; base += block)
        for (Index b = 0; b < stride; ++b) {
          for (Index c = 0; c < letters; ++c) {
            Complex acc(0.0);
            for (Index cp = 0; cp < letters; ++cp) acc += t(c, cp) * v(base + cp * stride + b);
            scratch(c) = acc;
          }
          for (Index c = 0; c < letters; ++c) v(base + c * stride + b) = scratch(c);
        }
      stride *= letters;
    }
  }

  Index d_;
  int copies_;
  Matrix t_;
  Matrix t_adj_;
  Index full_ = 0;
  Index pair_dim_ = 0;
  std::vector<Index> to_pair_;
};

}  // namespace

double regularized_fidelity_full(const Channel& channel, int copies,
                                 const OptimizerOptions& opts) {
  if (copies < 1) throw DimensionMismatch("regularized_fidelity_full: need n >= 1");
  const double total = std::pow(static_cast<double>(channel.kraus_count()), copies) *
                       std::pow(static_cast<double>(channel.dim()), 2.0 * copies);
  if (total > budget::kraus_entries)
    throw BudgetExceeded("regularized_fidelity_full: tensor power exceeds the full-space budget");

  const TensorPowerObjective objective(channel, copies);
  MaximizationResult r = bb_maximize(
      objective.dim(), [&objective](const Vector& x, Vector& g) { return objective(x, g); }, opts);
  return std::pow(r.value, 1.0 / static_cast<double>(copies));
}

NuInftyResult nu_infty(const Channel& channel, const OptimizerOptions& opts,
                       std::vector<std::vector<double>>* half_step_trace) {
  validate(opts);
  const Channel adj = channel.adjoint();

  NuInftyResult best{-std::numeric_limits<double>::infinity(),
                     PureState::normalized(Vector::Ones(channel.dim())),
                     PureState::normalized(Vector::Ones(channel.dim())),
                     0, opts.restarts, false};
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, r));
    Vector psi = rng.haar_vector(channel.dim());
    Vector phi = psi;
    std::vector<double> trace;

    double value = -std::numeric_limits<double>::infinity();
    bool converged = false;
    long iter = 0;
    while (iter < opts.max_iters && !converged) {
      ++iter;
      auto [lam1, phi_state] = dominant_eigenpair(channel.apply(psi * psi.adjoint()));
      phi = phi_state.amplitudes();
      auto [lam2, psi_state] = dominant_eigenpair(adj.apply(phi * phi.adjoint()));
      psi = psi_state.amplitudes();
      if (half_step_trace) {
        trace.push_back(lam1);
        trace.push_back(lam2);
      }
      converged = std::abs(lam2 - value) < opts.grad_tol;
      value = lam2;
    }
    if (half_step_trace) half_step_trace->push_back(std::move(trace));
    if (value > best.value) {
      best.value = value;
      best.phi1 = PureState::normalized(phi);
      best.phi2 = PureState::normalized(psi);
      best.iterations = iter;
      best.converged = converged;
    }
  }
  return best;
}

double nu_2(const Channel& channel, const OptimizerOptions& opts) {
  const Channel composed = compose(channel.adjoint(), channel);
  return std::sqrt(max_fidelity(composed, opts).value);
}

}  // namespace qfid
