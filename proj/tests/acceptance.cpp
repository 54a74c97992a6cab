// acceptance.cpp — End-to-end acceptance suite over the figure presets and
// seeded random ensembles. Prints one pass/fail line per criterion; the exit
// status is the number of failed criteria.

#include "qfid/channel.hpp"
#include "qfid/experiments.hpp"
#include "qfid/optimize.hpp"
#include "qfid/pauli.hpp"
#include "qfid/rng.hpp"
#include "qfid/symmetric.hpp"
#include "qfid/trial_states.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace qfid;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << (notes.tellp() > 0 ? "; " : "") << what;
    }
  }
};

std::string fmt(double v) { return format_double(v, 9); }

PureState phi_plus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(v);
}

PureState phi_minus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return PureState(v);
}

Matrix symmetric_basis_4letters(int n) {
  const auto occs = enumerate_occupations(n);
  std::map<OccupationIndex, int> index_of;
  for (std::size_t i = 0; i < occs.size(); ++i) index_of[occs[i]] = static_cast<int>(i);
  Index dim = 1;
  for (int i = 0; i < n; ++i) dim *= 4;
  Matrix basis = Matrix::Zero(dim, static_cast<Index>(occs.size()));
  for (Index s = 0; s < dim; ++s) {
    OccupationIndex occ{0, 0, 0, 0};
    Index t = s;
    for (int site = 0; site < n; ++site) {
      ++occ[static_cast<std::size_t>(t % 4)];
      t /= 4;
    }
    basis(s, index_of.at(occ)) += 1.0;
  }
  for (Index c = 0; c < basis.cols(); ++c) basis.col(c).normalize();
  return basis;
}

ExperimentConfig sweep_config(const std::string& preset, int n_min, int n_max,
                              std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.channel = preset_channel(preset);
  cfg.label = preset;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  cfg.opt.seed = seed;
  cfg.timing = false;
  return cfg;
}

// -------------------------------------------------------------- criterion 1

Check criterion1_fig1() {
  Check c;
  ExperimentConfig cfg = sweep_config("fig1", 1, 20, 101);
  cfg.mode_trial = false;
  const auto rows = run_sweep(cfg);

  c.require(std::abs(rows[0].f_symmetric.value() - 0.5) <= 1e-6,
            "F(1) = " + fmt(rows[0].f_symmetric.value()) + " not 0.5 +- 1e-6");
  for (std::size_t i = 1; i < rows.size(); ++i)
    c.require(rows[i].f_symmetric.value() > rows[i - 1].f_symmetric.value(),
              "series not strictly increasing at n = " + std::to_string(rows[i].n));
  c.require(std::abs(rows[19].f_symmetric.value() - 0.6761) <= 5e-4,
            "F(20) = " + fmt(rows[19].f_symmetric.value()) + " not 0.6761 +- 5e-4");
  for (const auto& row : rows)
    c.require(std::abs(row.f_symmetric.value() - row.f_closed_trial.value()) <= 1e-6,
              "F_symmetric vs closed-form trial mismatch at n = " + std::to_string(row.n));
  return c;
}

// -------------------------------------------------------------- criterion 2

Check criterion2_fig2() {
  Check c;
  ExperimentConfig cfg = sweep_config("fig2", 1, 26, 102);
  cfg.mode_trial = false;
  const auto rows = run_sweep(cfg);
  const double f1 = 2.0 / 3.0;

  for (const auto& row : rows) {
    if (row.n <= 9)
      c.require(std::abs(row.f_symmetric.value() - f1) <= 1e-6,
                "plateau broken at n = " + std::to_string(row.n) + ": " +
                    fmt(row.f_symmetric.value()));
  }
  const double tail = rows[25].f_symmetric.value();
  c.require(tail > f1 + 5e-3, "F(26) = " + fmt(tail) + " not above 2/3 + 5e-3");
  c.require(tail < 0.7143, "F(26) = " + fmt(tail) + " not below 0.7143");
  for (const auto& row : rows) {
    if (row.n <= 9)
      c.require(row.f_closed_trial.value() <= f1 + 1e-12,
                "trial series above F(1) at n = " + std::to_string(row.n));
    if (row.n >= 11)
      c.require(row.f_closed_trial.value() > f1,
                "trial series not above F(1) at n = " + std::to_string(row.n));
  }
  return c;
}

// -------------------------------------------------------------- criterion 3

Check criterion3_fig3() {
  Check c;
  ExperimentConfig cfg = sweep_config("fig3", 1, 26, 103);
  cfg.mode_trial = false;
  const auto rows = run_sweep(cfg);
  const double f1 = 2.0 / 3.0;

  c.require(rows[17].f_closed_trial.value() <= f1,
            "trial series already above F(1) at n = 18");
  c.require(rows[19].f_closed_trial.value() > f1, "trial series not above F(1) at n = 20");
  for (const auto& row : rows)
    if (row.n <= 17)
      c.require(std::abs(row.f_symmetric.value() - f1) <= 1e-6,
                "plateau broken at n = " + std::to_string(row.n) + ": " +
                    fmt(row.f_symmetric.value()));
  return c;
}

// -------------------------------------------------------------- criterion 4

Check criterion4_full_vs_symmetric() {
  Check c;
  std::uint64_t seed = 104;
  for (const char* preset : {"fig1", "fig2", "fig3"}) {
    ExperimentConfig cfg = sweep_config(preset, 1, 6, seed++);
    cfg.mode_full = true;
    cfg.mode_trial = false;
    cfg.mode_closed = false;
    const auto rows = run_sweep(cfg);
    for (const auto& row : rows)
      c.require(std::abs(row.f_full.value() - row.f_symmetric.value()) <= 1e-6,
                std::string(preset) + " |F_full - F_symmetric| = " +
                    fmt(std::abs(row.f_full.value() - row.f_symmetric.value())) + " at n = " +
                    std::to_string(row.n));
  }
  return c;
}

// -------------------------------------------------------------- criterion 5

Check criterion5_closed_forms() {
  Check c;
  Rng rng(105);
  OptimizerOptions opts;
  double worst_nu = 0.0;
  for (int i = 0; i < 200; ++i) {
    const PauliChannel p = random_canonical_pauli(rng);
    opts.seed = derive_seed(105, static_cast<std::uint64_t>(i));
    worst_nu = std::max(worst_nu,
                        std::abs(nu_infty(to_channel(p), opts).value - nu_infty_closed(p)));
  }
  c.require(worst_nu <= 1e-8, "nu_infty numeric vs closed deviates by " + fmt(worst_nu));

  double worst_nu2 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Channel ch = random_channel(rng, 2, 2 + i % 3);
    opts.seed = derive_seed(106, static_cast<std::uint64_t>(i));
    const double via_relation = nu_2(ch, opts);
    const Channel adj = ch.adjoint();
    auto objective = [&](const Vector& x, Vector& grad) {
      const Matrix rho = x * x.adjoint();
      const Matrix out = ch.apply(rho);
      grad = 2.0 * (adj.apply(out) * x);
      return (out * out).trace().real();
    };
    opts.seed = derive_seed(107, static_cast<std::uint64_t>(i));
    const double direct = std::sqrt(bb_maximize(2, objective, opts).value);
    worst_nu2 = std::max(worst_nu2, std::abs(via_relation - direct));
  }
  c.require(worst_nu2 <= 1e-8, "nu_2 two-route deviation " + fmt(worst_nu2));
  return c;
}

// -------------------------------------------------------------- criterion 6

Check criterion6_oracles() {
  Check c;
  Rng rng(108);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 3;
    const Channel ch = random_channel(rng, 2, 2 + i % 3);
    const SymmetricState s{n, rng.haar_vector(n + 1)};
    worst = std::max(worst, std::abs(symmetric_fidelity(ch, s) -
                                     fidelity(tensor_power(ch, n), expand(s))));
  }
  c.require(worst <= 1e-9, "symmetric vs full-tensor fidelity deviates by " + fmt(worst));

  const Channel ch = random_channel(rng, 2, 3);
  const TransferMatrix t = natural_representation(ch);
  const Matrix basis = symmetric_basis_4letters(3);
  const Matrix t3 = Eigen::kroneckerProduct(Eigen::kroneckerProduct(t.mat, t.mat).eval(),
                                            t.mat).eval();
  const Matrix oracle = basis.adjoint() * t3 * basis;
  const double entry_dev =
      (symmetric_transfer(t, 3).entries - oracle).cwiseAbs().maxCoeff();
  c.require(entry_dev <= 1e-10,
            "symmetric_transfer vs symmetrizer restriction deviates by " + fmt(entry_dev));
  return c;
}

// -------------------------------------------------------------- criterion 7

Check criterion7_inequalities() {
  Check c;
  OptimizerOptions opts;

  // presets: trial^{1/n} <= F_sym + 1e-6 and F_sym <= nu_infty + 1e-6
  std::uint64_t seed = 109;
  for (const char* preset : {"fig1", "fig2", "fig3"}) {
    const Channel ch = preset_channel(preset).to_channel();
    opts.seed = derive_seed(seed, 1);
    const NuInftyResult nu = nu_infty(ch, opts);
    const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
    for (int n = 1; n <= 10; ++n) {
      opts.seed = derive_seed(seed, 100 + static_cast<std::uint64_t>(n));
      const double sym = max_symmetric_fidelity(ch, n, opts).fidelity_root;
      c.require(trial_fidelity_root(ch, pair, n) <= sym + 1e-6,
                std::string(preset) + ": trial above symmetric at n = " + std::to_string(n));
      c.require(sym <= nu.value + 1e-6,
                std::string(preset) + ": symmetric above nu_infty at n = " + std::to_string(n));
    }
    ++seed;
  }

  // random qubit channels: F <= nu_infty and the trial/symmetric chain
  Rng rng(112);
  for (int i = 0; i < 50; ++i) {
    const Channel ch = random_channel(rng, 2, 1 + i % 4);
    opts.seed = derive_seed(113, static_cast<std::uint64_t>(i));
    const double f = max_fidelity(ch, opts).value;
    opts.seed = derive_seed(114, static_cast<std::uint64_t>(i));
    const NuInftyResult nu = nu_infty(ch, opts);
    c.require(f <= nu.value + 1e-8, "F > nu_infty on random channel " + std::to_string(i));
    const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
    for (int n : {2, 5}) {
      opts.seed = derive_seed(115, static_cast<std::uint64_t>(i * 10 + n));
      const double sym = max_symmetric_fidelity(ch, n, opts).fidelity_root;
      c.require(trial_fidelity_root(ch, pair, n) <= sym + 1e-6,
                "trial above symmetric on random channel " + std::to_string(i) + " at n = " +
                    std::to_string(n));
    }
  }

  // trial convergence at n = 1e4
  double worst_rel = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Channel ch = random_channel(rng, 2, 2 + i % 3);
    opts.seed = derive_seed(116, static_cast<std::uint64_t>(i));
    const NuInftyResult nu = nu_infty(ch, opts);
    const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
    worst_rel = std::max(
        worst_rel, std::abs(trial_fidelity_root(ch, pair, 10000) - nu.value) / nu.value);
  }
  c.require(worst_rel < 1e-2, "trial root at n = 1e4 off nu_infty by " + fmt(worst_rel));
  return c;
}

// -------------------------------------------------------------- criterion 8

Check criterion8_gradients() {
  Check c;
  Rng rng(117);
  auto fd = [](const std::function<double(const Vector&)>& f, const Vector& x,
               const Vector& dir) {
    const double h = 1e-5;
    return (f(x + h * dir) - f(x - h * dir)) / (2.0 * h);
  };

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Index d = 2 + i % 3;
    const Channel ch = random_channel(rng, d, 1 + i % 3);
    const Vector psi = rng.haar_vector(d);
    const Vector g = fidelity_gradient(ch, psi);
    Vector delta = rng.haar_vector(d);
    delta -= psi.dot(delta).real() * psi;
    const double analytic = 2.0 * g.dot(delta).real();
    const double numeric = fd([&ch](const Vector& x) { return fidelity(ch, x); }, psi, delta);
    worst = std::max(worst,
                     std::abs(numeric - analytic) / std::max(std::abs(analytic), 1e-3));
  }
  c.require(worst <= 1e-6, "fidelity gradient FD relative error " + fmt(worst));

  double worst_sym = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 6;
    const Channel ch = random_channel(rng, 2, 2 + i % 3);
    const DickeTransfer transfer(ch, n);
    const Vector cvec = rng.haar_vector(n + 1);
    Vector g;
    transfer.fidelity(cvec, &g, nullptr);
    Vector delta = rng.haar_vector(n + 1);
    delta -= cvec.dot(delta).real() * cvec;
    const double analytic = 2.0 * g.dot(delta).real();
    const double numeric =
        fd([&transfer](const Vector& x) { return transfer.fidelity(x); }, cvec, delta);
    worst_sym = std::max(worst_sym,
                         std::abs(numeric - analytic) / std::max(std::abs(analytic), 1e-3));
  }
  c.require(worst_sym <= 1e-6, "symmetric gradient FD relative error " + fmt(worst_sym));
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Check (*run)();
  };
  const std::vector<Criterion> criteria{
      {"criterion 1: fig1 reproduction (symmetric series, n = 1..20)", criterion1_fig1},
      {"criterion 2: fig2 reproduction (plateau and crossover, n = 1..26)", criterion2_fig2},
      {"criterion 3: fig3 reproduction (crossover near n0 = 19)", criterion3_fig3},
      {"criterion 4: full vs symmetric maximization agreement (n <= 6)",
       criterion4_full_vs_symmetric},
      {"criterion 5: closed forms vs numerics (nu_infty, nu_2)", criterion5_closed_forms},
      {"criterion 6: oracle equivalence (symmetric machinery)", criterion6_oracles},
      {"criterion 7: inequality suite (bounds and convergence)", criterion7_inequalities},
      {"criterion 8: gradient finite-difference checks", criterion8_gradients},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.notes << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (result.ok) {
      std::printf("[PASS] %s (%.1f s)\n", criterion.name, seconds);
    } else {
      ++failures;
      std::printf("[FAIL] %s (%.1f s): %s\n", criterion.name, seconds,
                  result.notes.str().c_str());
    }
    std::fflush(stdout);
  }
  return failures;
}
