// experiments.hpp — Figure-reproduction sweeps, the executable property suite,
// and channel summaries. CSV columns and numeric formatting are part of the
// contract: 12 significant digits, '.' decimal separator, one row per n.

#pragma once

#include "qfid/channel_io.hpp"
#include "qfid/optimize.hpp"
#include "qfid/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfid {

struct ExperimentConfig {
  ChannelDescription channel;
  std::string label;  // preset name or file path, used in messages
  int n_min = 1;
  int n_max = 1;
  bool mode_full = false;
  bool mode_symmetric = true;
  bool mode_trial = true;
  bool mode_closed = true;
  OptimizerOptions opt;  // opt.seed is the master seed of the sweep
  int jobs = 0;          // worker-pool size; 0 means hardware concurrency
  bool timing = true;    // emit measured seconds_* cells
};

struct ResultRow {
  int n = 0;
  std::optional<double> f_full;
  std::optional<double> f_symmetric;
  std::optional<double> f_trial;
  std::optional<double> f_closed_trial;
  std::optional<double> nu_inf;
  std::optional<double> f_tilde;
  std::optional<double> sec_full;
  std::optional<double> sec_symmetric;
  std::optional<double> sec_trial;
  std::optional<double> sec_closed;
};

// fig1: p = (0.1, 0.2, 0.3, 0.4); fig2: eps = 1/21; fig3: eps = 0.025.
ChannelDescription preset_channel(const std::string& name);

// One row per n in [n_min, n_max]. Cells are independent jobs over a worker
// pool; per-cell seeds derive from (master seed, n, mode), so the CSV values
// do not depend on the pool size. Full-mode cells beyond the tensor-power
// budget are left empty (noted on stderr).
std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

// Runs every module invariant as a named check; one line per property
// (name, trials, max deviation, pass flag). Returns the failure count.
// `trial_scale` multiplies the per-property trial counts (>= 1 trial each).
int run_properties(std::uint64_t seed, double trial_scale, std::ostream& out);

void describe_channel(const ChannelDescription& description, const std::string& label,
                      std::ostream& out);

// Seeded instance generators shared by the property suite and the tests.
Channel random_channel(Rng& rng, Index dim, int kraus_count);
PauliChannel random_canonical_pauli(Rng& rng);

}  // namespace qfid
