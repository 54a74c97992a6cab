// experiments.cpp — Sweep harness, executable property suite, channel summaries

#include "qfid/experiments.hpp"

#include "qfid/combinatorics.hpp"
#include "qfid/errors.hpp"
#include "qfid/pauli.hpp"
#include "qfid/symmetric.hpp"
#include "qfid/trial_states.hpp"

#include <Eigen/Eigenvalues>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

namespace qfid {

// ------------------------------------------------------------------ presets

ChannelDescription preset_channel(const std::string& name) {
  ChannelDescription out;
  out.kind = ChannelDescription::Kind::pauli;
  if (name == "fig1") {
    out.pauli = PauliChannel{{0.1, 0.2, 0.3, 0.4}};
  } else if (name == "fig2") {
    out.pauli = epsilon_channel(1.0 / 21.0);
  } else if (name == "fig3") {
    out.pauli = epsilon_channel(0.025);
  } else {
    throw ParseError("preset: unknown name `" + name + "` (expected fig1, fig2 or fig3)");
  }
  return out;
}

// ------------------------------------------------------- random instances

Channel random_channel(Rng& rng, Index dim, int kraus_count) {
  std::vector<Matrix> g;
  g.reserve(static_cast<std::size_t>(kraus_count));
  for (int i = 0; i < kraus_count; ++i) g.push_back(rng.gaussian_matrix(dim, dim));
  Matrix s = Matrix::Zero(dim, dim);
  for (const auto& m : g) s.noalias() += m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Matrix isqrt = es.eigenvectors() *
                       es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().adjoint();
  for (auto& m : g) m = m * isqrt;
  return Channel::from_kraus(std::move(g), true);
}

PauliChannel random_canonical_pauli(Rng& rng) {
  std::array<double, 4> p{};
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(rng.uniform01());
    sum += v;
  }
  for (double& v : p) v /= sum;
  return canonicalize(PauliChannel{p}).channel;
}

// -------------------------------------------------------------------- sweep

namespace {

enum class Mode { full, symmetric, trial, closed };

bool full_space_within_budget(const Channel& channel, int n) {
  const double total = std::pow(static_cast<double>(channel.kraus_count()), n) *
                       std::pow(static_cast<double>(channel.dim()), 2.0 * n);
  return total <= budget::kraus_entries;
}

std::uint64_t cell_seed(std::uint64_t master, Mode mode, int n) {
  return derive_seed(master, (static_cast<std::uint64_t>(mode) + 2) * 1000000ull +
                                 static_cast<std::uint64_t>(n));
}

void check_row_values(const ResultRow& row) {
  auto check = [&](const std::optional<double>& v, const char* what) {
    if (v && !(*v >= 0.0 && *v <= 1.0 + 1e-9))
      throw NonFiniteObjective(std::string("sweep: ") + what + " out of [0,1] at n = " +
                               std::to_string(row.n) + ": " + format_double(*v));
  };
  check(row.f_full, "F_full");
  check(row.f_symmetric, "F_symmetric");
  check(row.f_trial, "F_trial");
  check(row.f_closed_trial, "F_closed_trial");
  check(row.nu_inf, "nu_infty");
  check(row.f_tilde, "F_tilde");
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  if (config.n_min < 1 || config.n_max < config.n_min)
    throw DimensionMismatch("sweep: need 1 <= n_min <= n_max");
  validate(config.opt);

  const Channel channel = config.channel.to_channel();
  std::optional<PauliChannel> canonical;
  if (config.channel.kind == ChannelDescription::Kind::pauli)
    canonical = canonicalize(config.channel.pauli.value()).channel;

  // nu_infty once per sweep; its maximizing pair feeds the trial series.
  OptimizerOptions nu_opts = config.opt;
  nu_opts.seed = derive_seed(config.opt.seed, 1000000ull);
  const NuInftyResult nu = nu_infty(channel, nu_opts);
  const StatePair pair = fix_phase(channel, StatePair(nu.phi1, nu.phi2));

  const int count = config.n_max - config.n_min + 1;
  std::vector<ResultRow> rows(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    rows[static_cast<std::size_t>(i)].n = config.n_min + i;
    rows[static_cast<std::size_t>(i)].nu_inf = nu.value;
    if (canonical) rows[static_cast<std::size_t>(i)].f_tilde = f_tilde_closed(*canonical);
  }

  struct Cell {
    int n = 0;
    Mode mode = Mode::symmetric;
  };
  std::vector<Cell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    if (config.mode_full) {
      if (full_space_within_budget(channel, n)) {
        cells.push_back({n, Mode::full});
      } else {
        std::fprintf(stderr, "qfid: full mode skipped at n = %d (beyond the full-space budget)\n",
                     n);
      }
    }
    if (config.mode_symmetric) cells.push_back({n, Mode::symmetric});
    if (config.mode_trial) cells.push_back({n, Mode::trial});
    if (config.mode_closed && canonical) cells.push_back({n, Mode::closed});
  }

  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells.size());

  auto run_cell = [&](const Cell& cell, std::size_t index) {
    ResultRow& row = rows[static_cast<std::size_t>(cell.n - config.n_min)];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (cell.mode) {
        case Mode::full: {
          OptimizerOptions o = config.opt;
          o.seed = cell_seed(config.opt.seed, cell.mode, cell.n);
          row.f_full = regularized_fidelity_full(channel, cell.n, o);
          break;
        }
        case Mode::symmetric: {
          if (cell.n >= 20) {
            std::lock_guard<std::mutex> lock(log_mutex);
            std::fprintf(stderr, "qfid: symmetric maximization n = %d ...\n", cell.n);
          }
          OptimizerOptions o = config.opt;
          o.seed = cell_seed(config.opt.seed, cell.mode, cell.n);
          row.f_symmetric = max_symmetric_fidelity(channel, cell.n, o).fidelity_root;
          break;
        }
        case Mode::trial:
          row.f_trial = trial_fidelity_root(channel, pair, cell.n);
          break;
        case Mode::closed:
          row.f_closed_trial = trial_fidelity_closed(*canonical, cell.n);
          break;
      }
    } catch (...) {
      errors[index] = std::current_exception();
      return;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    switch (cell.mode) {
      case Mode::full: row.sec_full = seconds; break;
      case Mode::symmetric: row.sec_symmetric = seconds; break;
      case Mode::trial: row.sec_trial = seconds; break;
      case Mode::closed: row.sec_closed = seconds; break;
    }
    if (cell.mode == Mode::symmetric && cell.n >= 20) {
      std::lock_guard<std::mutex> lock(log_mutex);
      std::fprintf(stderr, "qfid: symmetric maximization n = %d done in %.1f s\n", cell.n,
                   seconds);
    }
  };

  unsigned pool = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  pool = std::min<unsigned>(pool, static_cast<unsigned>(cells.size()));
  if (pool <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(cells[i], i);
  } else {
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) break;
        run_cell(cells[i], i);
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& row : rows) check_row_values(row);
  return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "n,F_full,F_symmetric,F_trial,F_closed_trial,nu_infty,F_tilde,"
         "seconds_full,seconds_symmetric,seconds_trial,seconds_closed\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v, 12) : std::string();
  };
  for (const auto& r : rows) {
    out << r.n << ',' << cell(r.f_full) << ',' << cell(r.f_symmetric) << ',' << cell(r.f_trial)
        << ',' << cell(r.f_closed_trial) << ',' << cell(r.nu_inf) << ',' << cell(r.f_tilde) << ','
        << cell(r.sec_full) << ',' << cell(r.sec_symmetric) << ',' << cell(r.sec_trial) << ','
        << cell(r.sec_closed) << '\n';
  }
}

// ----------------------------------------------------------------- describe

void describe_channel(const ChannelDescription& description, const std::string& label,
                      std::ostream& out) {
  const Channel channel = description.to_channel();
  out << "source: " << label << "\n";
  out << "kind: " << (description.kind == ChannelDescription::Kind::pauli ? "pauli" : "kraus")
      << "\n";
  out << "d = " << channel.dim() << ", K = " << channel.kraus_count() << "\n";
  out << "trace-preservation residual = " << format_double(channel.tp_residual(), 12) << "\n";
  if (description.kind != ChannelDescription::Kind::pauli) return;

  const PauliChannel& input = description.pauli.value();
  const CanonicalPauli canon = canonicalize(input);
  const auto& p = canon.channel.p;
  out << "p (input)     = [" << format_double(input.p[0], 12) << ", "
      << format_double(input.p[1], 12) << ", " << format_double(input.p[2], 12) << ", "
      << format_double(input.p[3], 12) << "]\n";
  out << "p (canonical) = [" << format_double(p[0], 12) << ", " << format_double(p[1], 12) << ", "
      << format_double(p[2], 12) << ", " << format_double(p[3], 12) << "]  (axis sources "
      << canon.axis_perm[0] << "," << canon.axis_perm[1] << "," << canon.axis_perm[2] << ")\n";
  out << "p0 + p3       = " << format_double(p[0] + p[3], 12) << "\n";
  out << "nu_infty      = " << format_double(nu_infty_closed(canon.channel), 12) << "  (case "
      << (p[0] >= p[2] ? "a" : "b") << ")\n";
  out << "F_tilde       = " << format_double(f_tilde_closed(canon.channel), 12) << "\n";
  if (const auto eps = epsilon_of(canon.channel); eps && *eps > 0.0) {
    const double n0 = crossover_n0(*eps);
    out << "epsilon       = " << format_double(*eps, 12) << "\n";
    out << "n0            = " << format_double(n0, 12) << "  (ceil = "
        << static_cast<long>(std::ceil(n0)) << ")\n";
  }
}

// ----------------------------------------------------------- property suite

namespace {

struct PropertyReport {
  std::ostream& out;
  int failures = 0;

  void emit(const std::string& name, long trials, double max_dev, double threshold) {
    const bool pass = max_dev <= threshold;
    if (!pass) ++failures;
    out << name << ',' << trials << ',' << format_double(max_dev, 12) << ',' << (pass ? 1 : 0)
        << '\n';
  }
};

long scaled(long base, double scale) {
  return std::max<long>(1, std::lround(static_cast<double>(base) * scale));
}

Matrix random_density(Rng& rng, Index d) {
  const Matrix g = rng.gaussian_matrix(d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Central difference of f along direction at h = 1e-5.
template <typename F>
double central_difference(const F& f, const Vector& x, const Vector& direction) {
  const double h = 1e-5;
  return (f(x + h * direction) - f(x - h * direction)) / (2.0 * h);
}

StatePair sigma1_pair() {
  Vector plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return StatePair(PureState(plus), PureState(minus));
}

}  // namespace

int run_properties(std::uint64_t seed, double trial_scale, std::ostream& out) {
  out << "property,trials,max_deviation,pass\n";
  PropertyReport report{out};
  auto prop_seed = [seed](std::uint64_t index) { return derive_seed(seed, 2000 + index); };

  OptimizerOptions base_opts;  // per-use copies get their own seeds

  // channel_core: trace preservation
  {
    Rng rng(prop_seed(1));
    double dev = 0.0;
    const long channels = scaled(10, trial_scale);
    long trials = 0;
    for (long i = 0; i < channels; ++i) {
      const Index d = (i % 2 == 0) ? 2 : 3;
      const Channel n = random_channel(rng, d, 1 + static_cast<int>(i % 4));
      for (int r = 0; r < 10; ++r, ++trials) {
        const Matrix rho = random_density(rng, d);
        dev = std::max(dev, std::abs((n.apply(rho).trace() - rho.trace()).real()) +
                                std::abs(n.apply(rho).trace().imag()));
      }
    }
    report.emit("channel_trace_preservation", trials, dev, 1e-10);
  }

  // channel_core: positivity of outputs on pure inputs
  {
    Rng rng(prop_seed(2));
    double dev = 0.0;
    const long channels = scaled(5, trial_scale);
    long trials = 0;
    for (long i = 0; i < channels; ++i) {
      const Index d = (i % 2 == 0) ? 2 : 3;
      const Channel n = random_channel(rng, d, 2 + static_cast<int>(i % 3));
      for (int r = 0; r < 100; ++r, ++trials) {
        const Vector psi = rng.haar_vector(d);
        dev = std::max(dev, -min_eigenvalue(n.apply(psi * psi.adjoint())));
      }
    }
    report.emit("channel_positivity", trials, std::max(0.0, dev), 1e-10);
  }

  // channel_core: Kraus sum, trace route and transfer-matrix route agree
  {
    Rng rng(prop_seed(3));
    double dev = 0.0;
    const long trials = scaled(50, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Index d = (i % 3 == 0) ? 3 : 2;
      const Channel n = random_channel(rng, d, 1 + static_cast<int>(i % 4));
      const Vector psi = rng.haar_vector(d);
      const double via_kraus = fidelity(n, psi);
      const Matrix rho = psi * psi.adjoint();
      const double via_trace = (rho * n.apply(rho)).trace().real();
      const TransferMatrix t = natural_representation(n);
      const Vector pv = pair_vector(psi);
      const double via_transfer = pv.dot(t.mat * pv).real();
      dev = std::max({dev, std::abs(via_kraus - via_trace), std::abs(via_kraus - via_transfer)});
    }
    report.emit("fidelity_route_agreement", trials, dev, 1e-10);
  }

  // channel_core: adjoint is an involution
  {
    Rng rng(prop_seed(4));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel n = random_channel(rng, 2 + static_cast<Index>(i % 2), 2);
      const Channel back = n.adjoint().adjoint();
      for (std::size_t k = 0; k < n.kraus_count(); ++k)
        dev = std::max(dev, (n.kraus(k) - back.kraus(k)).cwiseAbs().maxCoeff());
    }
    report.emit("adjoint_involution", trials, dev, 0.0);
  }

  // channel_core: fidelity is multiplicative over tensor products
  {
    Rng rng(prop_seed(5));
    double dev = 0.0;
    const long trials = scaled(30, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel n = random_channel(rng, 2, 2);
      const Channel m = random_channel(rng, (i % 2 == 0) ? 2 : 3, 2);
      const Vector psi = rng.haar_vector(n.dim());
      const Vector phi = rng.haar_vector(m.dim());
      Vector prod(n.dim() * m.dim());
      for (Index a = 0; a < n.dim(); ++a)
        for (Index b = 0; b < m.dim(); ++b) prod(a * m.dim() + b) = psi(a) * phi(b);
      dev = std::max(dev, std::abs(fidelity(tensor(n, m), prod) -
                                   fidelity(n, psi) * fidelity(m, phi)));
    }
    report.emit("tensor_fidelity_product", trials, dev, 1e-10);
  }

  // channel_core: gradient against central finite differences
  {
    Rng rng(prop_seed(6));
    double dev = 0.0;
    const long trials = scaled(50, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Index d = 2 + static_cast<Index>(i % 3);
      const Channel n = random_channel(rng, d, 1 + static_cast<int>(i % 3));
      const Vector psi = rng.haar_vector(d);
      const Vector g = fidelity_gradient(n, psi);
      auto f = [&n](const Vector& x) { return fidelity(n, x); };
      for (int dir = 0; dir < 3; ++dir) {
        Vector delta = rng.haar_vector(d);
        delta -= psi.dot(delta).real() * psi;  // tangent probe
        const double analytic = 2.0 * g.dot(delta).real();
        // conj convention: dF = 2 Re<g, delta>
        const double numeric = central_difference(f, psi, delta);
        dev = std::max(dev, std::abs(numeric - analytic) / std::max(std::abs(analytic), 1e-3));
      }
    }
    report.emit("fidelity_gradient_fd", trials, dev, 1e-6);
  }

  // optimize: F <= nu_infty
  {
    Rng rng(prop_seed(7));
    double dev = 0.0;
    const long trials = scaled(30, trial_scale) + 3;
    for (long i = 0; i < trials; ++i) {
      Channel n = [&]() {
        if (i < 3) {
          const char* names[] = {"fig1", "fig2", "fig3"};
          return preset_channel(names[i]).to_channel();
        }
        return random_channel(rng, (i % 3 == 0) ? 3 : 2, 1 + static_cast<int>(i % 4));
      }();
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(7), static_cast<std::uint64_t>(i));
      const double f = max_fidelity(n, o).value;
      o.seed = derive_seed(prop_seed(7), 1000 + static_cast<std::uint64_t>(i));
      const double nu = nu_infty(n, o).value;
      dev = std::max(dev, f - nu);
    }
    report.emit("upper_bound_F_le_nu_infty", trials, dev, 1e-8);
  }

  // optimize: super-multiplicativity at product states
  {
    Rng rng(prop_seed(8));
    double dev = 0.0;
    const long channels = scaled(6, trial_scale);
    long trials = 0;
    const std::array<std::pair<int, int>, 4> splits{{{1, 1}, {1, 2}, {2, 2}, {1, 3}}};
    for (long i = 0; i < channels; ++i) {
      const Channel n = random_channel(rng, 2, 2 + static_cast<int>(i % 2));
      for (const auto& [m_copies, n_copies] : splits) {
        ++trials;
        OptimizerOptions o = base_opts;
        o.seed = derive_seed(prop_seed(8), static_cast<std::uint64_t>(trials));
        const double whole = regularized_fidelity_full(n, m_copies + n_copies, o);
        o.seed = derive_seed(prop_seed(8), 1000 + static_cast<std::uint64_t>(trials));
        const double fm = max_fidelity(tensor_power(n, m_copies), o).value;
        o.seed = derive_seed(prop_seed(8), 2000 + static_cast<std::uint64_t>(trials));
        const double fn = max_fidelity(tensor_power(n, n_copies), o).value;
        const double product_root = std::pow(fm * fn, 1.0 / (m_copies + n_copies));
        dev = std::max(dev, product_root - whole);
      }
    }
    report.emit("supermultiplicativity_products", trials, dev, 1e-8);
  }

  // optimize: alternating ascent is monotone over half-steps
  {
    Rng rng(prop_seed(9));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel n = random_channel(rng, (i % 2 == 0) ? 2 : 3, 2);
      OptimizerOptions o = base_opts;
      o.restarts = 3;
      o.seed = derive_seed(prop_seed(9), static_cast<std::uint64_t>(i));
      std::vector<std::vector<double>> traces;
      nu_infty(n, o, &traces);
      for (const auto& trace : traces)
        for (std::size_t k = 1; k < trace.size(); ++k)
          dev = std::max(dev, trace[k - 1] - trace[k]);
    }
    report.emit("nu_infty_ascent_monotone", trials, std::max(dev, 0.0), 1e-12);
  }

  // optimize: identical seeds give identical results bitwise
  {
    Rng rng(prop_seed(10));
    double dev = 0.0;
    const long trials = scaled(3, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel n = random_channel(rng, 2, 3);
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(10), static_cast<std::uint64_t>(i));
      const MaximizationResult a = max_fidelity(n, o);
      const MaximizationResult b = max_fidelity(n, o);
      dev = std::max(dev, std::abs(a.value - b.value));
      dev = std::max(dev, (a.argmax - b.argmax).norm());
    }
    report.emit("optimizer_determinism", trials, dev, 0.0);
  }

  // optimize vs pauli_analytic: nu_infty closed form
  {
    Rng rng(prop_seed(11));
    double dev = 0.0;
    const long trials = scaled(100, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const PauliChannel p = random_canonical_pauli(rng);
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(11), static_cast<std::uint64_t>(i));
      dev = std::max(dev, std::abs(nu_infty(to_channel(p), o).value - nu_infty_closed(p)));
    }
    report.emit("nu_infty_closed_agreement", trials, dev, 1e-8);
  }

  // optimize: nu_infty of Pauli powers matches the single copy (King consequence)
  {
    Rng rng(prop_seed(12));
    double dev = 0.0;
    const long channels = scaled(8, trial_scale);
    long trials = 0;
    for (long i = 0; i < channels; ++i) {
      const PauliChannel p = random_canonical_pauli(rng);
      const Channel single = to_channel(p);
      const double nu1 = nu_infty_closed(p);
      for (int n = 2; n <= 3; ++n, ++trials) {
        OptimizerOptions o = base_opts;
        o.seed = derive_seed(prop_seed(12), static_cast<std::uint64_t>(trials));
        const double nun = std::pow(nu_infty(tensor_power(single, n), o).value, 1.0 / n);
        dev = std::max(dev, std::abs(nun - nu1));
      }
    }
    report.emit("nu_infty_regularized_pauli", trials, dev, 1e-7);
  }

  // symmetric: agrees with the full-tensor oracle
  {
    Rng rng(prop_seed(13));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const int n = 2 + static_cast<int>(i % 3);
      const Channel ch = random_channel(rng, 2, 2 + static_cast<int>(i % 3));
      SymmetricState s{n, rng.haar_vector(n + 1)};
      const double sym = symmetric_fidelity(ch, s);
      const double full = fidelity(tensor_power(ch, n), expand(s));
      dev = std::max(dev, std::abs(sym - full));
    }
    report.emit("symmetric_oracle_equivalence", trials, dev, 1e-9);
  }

  // symmetric: pair embedding is an isometry
  {
    Rng rng(prop_seed(14));
    double dev = 0.0;
    const long trials = scaled(50, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const int n = 1 + static_cast<int>(i % 10);
      SymmetricState s{n, rng.haar_vector(n + 1)};
      dev = std::max(dev, std::abs(pair_embedding(s).norm() - 1.0));
    }
    report.emit("pair_embedding_isometry", trials, dev, 1e-12);
  }

  // symmetric: quadratic form is real
  {
    Rng rng(prop_seed(15));
    double dev = 0.0;
    const long trials = scaled(50, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const int n = 2 + static_cast<int>(i % 5);
      const Channel ch = random_channel(rng, 2, 2 + static_cast<int>(i % 3));
      const DickeTransfer transfer(ch, n);
      double imag = 0.0;
      transfer.fidelity(rng.haar_vector(n + 1), nullptr, &imag);
      dev = std::max(dev, std::abs(imag));
    }
    report.emit("symmetric_form_reality", trials, dev, 1e-8);
  }

  // symmetric: gradient against central finite differences
  {
    Rng rng(prop_seed(16));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const int n = (i % 3 == 0) ? 3 : (i % 3 == 1 ? 5 : 8);
      const Channel ch = random_channel(rng, 2, 2);
      const DickeTransfer transfer(ch, n);
      const Vector c = rng.haar_vector(n + 1);
      Vector g;
      transfer.fidelity(c, &g, nullptr);
      auto f = [&transfer](const Vector& x) { return transfer.fidelity(x); };
      for (int dir = 0; dir < 2; ++dir) {
        Vector delta = rng.haar_vector(n + 1);
        delta -= c.dot(delta).real() * c;
        const double analytic = 2.0 * g.dot(delta).real();
        const double numeric = central_difference(f, c, delta);
        dev = std::max(dev, std::abs(numeric - analytic) / std::max(std::abs(analytic), 1e-3));
      }
    }
    report.emit("symmetric_gradient_fd", trials, dev, 1e-6);
  }

  // symmetric: restricted maximum stays below nu_infty for Pauli channels
  {
    Rng rng(prop_seed(17));
    double dev = 0.0;
    const long channels = scaled(8, trial_scale);
    long trials = 0;
    for (long i = 0; i < channels; ++i) {
      const PauliChannel p = random_canonical_pauli(rng);
      const Channel ch = to_channel(p);
      const double nu = nu_infty_closed(p);
      for (int n : {2, 4, 8}) {
        ++trials;
        OptimizerOptions o = base_opts;
        o.seed = derive_seed(prop_seed(17), static_cast<std::uint64_t>(trials));
        dev = std::max(dev, max_symmetric_fidelity(ch, n, o).fidelity_root - nu);
      }
    }
    report.emit("symmetric_below_nu_infty_pauli", trials, dev, 1e-6);
  }

  // symmetric: restricted maximum is a lower bound on the full maximum
  {
    double dev = 0.0;
    long trials = 0;
    const Channel fig1 = preset_channel("fig1").to_channel();
    for (int n : {2, 4, 6}) {
      ++trials;
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(18), static_cast<std::uint64_t>(n));
      const double sym = max_symmetric_fidelity(fig1, n, o).fidelity_root;
      o.seed = derive_seed(prop_seed(18), 100 + static_cast<std::uint64_t>(n));
      const double full = regularized_fidelity_full(fig1, n, o);
      dev = std::max(dev, sym - full);
    }
    report.emit("symmetric_below_full", trials, dev, 1e-8);
  }

  // trial_states: closed 16-term sum vs full-tensor evaluation
  {
    Rng rng(prop_seed(19));
    double dev = 0.0;
    const long pairs = scaled(10, trial_scale);
    long trials = 0;
    for (long i = 0; i < pairs; ++i) {
      const Index d = (i % 2 == 0) ? 2 : 3;
      const Channel ch = random_channel(rng, d, 2);
      const StatePair pair(PureState::normalized(rng.haar_vector(d)),
                           PureState::normalized(rng.haar_vector(d)));
      for (int n : {2, 3, 5}) {
        ++trials;
        const TrialState t = build_trial_state(pair, n);
        const double direct = fidelity(tensor_power(ch, n), t.state);
        dev = std::max(dev, std::abs(trial_fidelity(ch, pair, n) - direct));
      }
    }
    report.emit("trial_consistency_full_tensor", trials, dev, 1e-9);
  }

  // trial_states: n-th root converges to nu_infty
  {
    Rng rng(prop_seed(20));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel ch = random_channel(rng, 2, 2 + static_cast<int>(i % 3));
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(20), static_cast<std::uint64_t>(i));
      const NuInftyResult nu = nu_infty(ch, o);
      const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
      const double root = trial_fidelity_root(ch, pair, 10000);
      dev = std::max(dev, std::abs(root - nu.value) / nu.value);
    }
    report.emit("trial_convergence_nu_infty", trials, dev, 1e-2);
  }

  // trial_states: trial root below the symmetric maximum
  {
    Rng rng(prop_seed(21));
    double dev = 0.0;
    long trials = 0;
    auto chain = [&](const Channel& ch, int n, std::uint64_t s) {
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(21), s);
      const NuInftyResult nu = nu_infty(ch, o);
      const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
      o.seed = derive_seed(prop_seed(21), s + 5000);
      const double sym = max_symmetric_fidelity(ch, n, o).fidelity_root;
      dev = std::max(dev, trial_fidelity_root(ch, pair, n) - sym);
      ++trials;
    };
    const Channel fig1 = preset_channel("fig1").to_channel();
    for (int n : {5, 10, 20}) chain(fig1, n, static_cast<std::uint64_t>(n));
    const long channels = scaled(5, trial_scale);
    for (long i = 0; i < channels; ++i) {
      const Channel ch = random_channel(rng, 2, 2 + static_cast<int>(i % 3));
      for (int n : {2, 4, 8}) chain(ch, n, 100 + static_cast<std::uint64_t>(i) * 10 + n);
    }
    report.emit("trial_lower_bound_chain", trials, dev, 1e-6);
  }

  // trial_states: coefficient bounds at a nu_infty-maximizing pair
  {
    Rng rng(prop_seed(22));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      const Channel ch = random_channel(rng, 2, 2 + static_cast<int>(i % 3));
      OptimizerOptions o = base_opts;
      o.seed = derive_seed(prop_seed(22), static_cast<std::uint64_t>(i));
      const NuInftyResult nu = nu_infty(ch, o);
      const StatePair pair = fix_phase(ch, StatePair(nu.phi1, nu.phi2));
      const PairCoefficients c = channel_pair_coefficients(ch, pair);
      const double n1221 = c.at(1, 2, 2, 1).real();
      dev = std::max(dev, std::abs(c.at(1, 2, 2, 1).imag()));
      dev = std::max(dev, std::abs(n1221 - nu.value));
      dev = std::max(dev, c.at(2, 1, 1, 2).real() - n1221);
      dev = std::max(dev, c.at(1, 1, 1, 1).real() - n1221);
      dev = std::max(dev, c.at(2, 2, 2, 2).real() - n1221);
    }
    report.emit("trial_coefficient_bounds", trials, dev, 1e-8);
  }

  // pauli_analytic: plateau crossover bands around n0
  {
    long trials = 0;
    double violations = 0.0;
    for (double eps : {0.02, 0.03, 0.05}) {
      const PauliChannel p = epsilon_channel(eps);
      const double f1 = p.p[0] + p.p[3];
      const double n0 = crossover_n0(eps);
      const long below = static_cast<long>(std::floor(n0)) - 1;
      const long above = static_cast<long>(std::ceil(n0)) + 1;
      for (long n = 1; n < below; ++n, ++trials)
        if (trial_fidelity_closed(p, n) > f1 + 1e-12) violations += 1.0;
      for (long n = above + 1; n <= above + 30; ++n, ++trials)
        if (!(trial_fidelity_closed(p, n) > f1)) violations += 1.0;
    }
    report.emit("pauli_crossover_bands", trials, violations, 0.0);
  }

  // pauli_analytic: both branches agree at the case boundary p0 = p2
  {
    Rng rng(prop_seed(24));
    double dev = 0.0;
    const long trials = scaled(20, trial_scale);
    for (long i = 0; i < trials; ++i) {
      // construct canonical p with p0 == p2
      double p1 = 0.2 * rng.uniform01();
      double p2 = p1 + 0.3 * rng.uniform01();
      double p0 = p2;
      double p3 = 1.0 - p0 - p1 - p2;
      if (p3 < p2) continue;  // keep canonical; skipped draws count as trivial passes
      const PauliChannel p{{p0, p1, p2, p3}};
      dev = std::max(dev, std::abs((p.p[0] + p.p[3]) - (p.p[2] + p.p[3])));
      dev = std::max(dev, std::abs(nu_infty_closed(p) - (p.p[0] + p.p[3])));
    }
    report.emit("pauli_case_boundary", trials, dev, 1e-12);
  }

  // pauli_analytic: closed trial formula equals the trial-state route
  {
    Rng rng(prop_seed(25));
    double dev = 0.0;
    const long channels = scaled(20, trial_scale);
    long trials = 0;
    const StatePair pair = sigma1_pair();
    for (long i = 0; i < channels; ++i) {
      const PauliChannel p = random_canonical_pauli(rng);
      const Channel ch = to_channel(p);
      for (long n : {1L, 2L, 3L, 5L, 10L, 100L, 1000L}) {
        ++trials;
        dev = std::max(dev, std::abs(trial_fidelity_closed(p, n) -
                                     trial_fidelity_root(ch, pair, n)));
      }
    }
    report.emit("pauli_closed_vs_trial_route", trials, dev, 1e-10);
  }

  // experiments: CSV values independent of the worker-pool size
  {
    ExperimentConfig cfg;
    cfg.channel = preset_channel("fig1");
    cfg.label = "fig1";
    cfg.n_min = 1;
    cfg.n_max = 3;
    cfg.mode_full = false;
    cfg.opt.seed = prop_seed(26);
    cfg.opt.restarts = 5;
    cfg.timing = false;
    cfg.jobs = 1;
    std::ostringstream a, b;
    write_csv(run_sweep(cfg), a);
    cfg.jobs = 2;
    write_csv(run_sweep(cfg), b);
    report.emit("csv_value_determinism", 2, a.str() == b.str() ? 0.0 : 1.0, 0.0);
  }

  // experiments: symmetric series is non-decreasing on the fig1 preset
  {
    ExperimentConfig cfg;
    cfg.channel = preset_channel("fig1");
    cfg.label = "fig1";
    cfg.n_min = 1;
    cfg.n_max = 8;
    cfg.mode_trial = false;
    cfg.mode_closed = false;
    cfg.opt.seed = prop_seed(27);
    cfg.timing = false;
    const auto rows = run_sweep(cfg);
    double dev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      dev = std::max(dev, rows[i - 1].f_symmetric.value() - rows[i].f_symmetric.value());
    report.emit("sweep_symmetric_monotone", static_cast<long>(rows.size()), std::max(dev, 0.0),
                1e-7);
  }

  return report.failures;
}

}  // namespace qfid
