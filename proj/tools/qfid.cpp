// qfid.cpp — Command-line harness: figure sweeps, property suite, channel summaries

#include "qfid/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

qfid::ChannelDescription resolve_channel(const std::string& path, const std::string& preset,
                                         std::string& label) {
  if (!preset.empty()) {
    label = "preset " + preset;
    return qfid::preset_channel(preset);
  }
  label = path;
  return qfid::read_channel_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfid — regularized channel-fidelity experiments"};
  app.require_subcommand(1);

  // ------------------------------------------------------------------ sweep
  auto* sweep = app.add_subcommand("sweep", "run a figure-style sweep and emit CSV");
  std::string channel_path, preset, modes = "symmetric,trial,closed", out_path;
  int n_min = 1, n_max = 20, jobs = 0;
  bool no_timing = false;
  qfid::OptimizerOptions opt;
  std::uint64_t seed = 0;
  sweep->add_option("--channel", channel_path, "channel description file");
  sweep->add_option("--preset", preset, "fig1 | fig2 | fig3");
  sweep->add_option("--n-min", n_min, "smallest copy count")->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", n_max, "largest copy count")->check(CLI::PositiveNumber);
  sweep->add_option("--modes", modes, "comma list from full,symmetric,trial,closed");
  sweep->add_option("--restarts", opt.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  sweep->add_option("--max-iters", opt.max_iters, "iteration cap per restart")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--grad-tol", opt.grad_tol, "tangent-gradient convergence tolerance");
  sweep->add_option("--seed", seed, "master seed");
  sweep->add_option("--jobs", jobs, "worker-pool size (default: machine parallelism)");
  sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
  sweep->add_flag("--no-timing", no_timing, "leave the seconds_* cells empty");

  // ------------------------------------------------------------------ props
  auto* props = app.add_subcommand("props", "run the property suite and report per-property lines");
  std::uint64_t props_seed = 0;
  double trials_scale = 1.0;
  props->add_option("--seed", props_seed, "master seed");
  props->add_option("--trials-scale", trials_scale, "multiplier on per-property trial counts");

  // --------------------------------------------------------------- describe
  auto* describe = app.add_subcommand("describe", "print a channel summary");
  std::string d_channel, d_preset;
  describe->add_option("--channel", d_channel, "channel description file");
  describe->add_option("--preset", d_preset, "fig1 | fig2 | fig3");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      if (channel_path.empty() == preset.empty()) {
        std::cerr << "sweep: exactly one of --channel or --preset is required\n";
        return 2;
      }
      qfid::ExperimentConfig cfg;
      cfg.channel = resolve_channel(channel_path, preset, cfg.label);
      cfg.n_min = n_min;
      cfg.n_max = n_max;
      cfg.opt = opt;
      cfg.opt.seed = seed;
      cfg.jobs = jobs;
      cfg.timing = !no_timing;
      cfg.mode_full = cfg.mode_symmetric = cfg.mode_trial = cfg.mode_closed = false;
      std::stringstream list(modes);
      std::string mode;
      while (std::getline(list, mode, ',')) {
        if (mode == "full") cfg.mode_full = true;
        else if (mode == "symmetric") cfg.mode_symmetric = true;
        else if (mode == "trial") cfg.mode_trial = true;
        else if (mode == "closed") cfg.mode_closed = true;
        else {
          std::cerr << "sweep: unknown mode `" << mode << "`\n";
          return 2;
        }
      }
      const auto rows = qfid::run_sweep(cfg);
      if (out_path.empty()) {
        qfid::write_csv(rows, std::cout);
      } else {
        std::ofstream out(out_path);
        if (!out) {
          std::cerr << "sweep: cannot open `" << out_path << "` for writing\n";
          return 2;
        }
        qfid::write_csv(rows, out);
      }
      return 0;
    }

    if (props->parsed()) {
      const int failures = qfid::run_properties(props_seed, trials_scale, std::cout);
      if (failures > 0) {
        std::cerr << "props: " << failures << " propert" << (failures == 1 ? "y" : "ies")
                  << " failed\n";
        return 1;
      }
      return 0;
    }

    if (describe->parsed()) {
      if (d_channel.empty() == d_preset.empty()) {
        std::cerr << "describe: exactly one of --channel or --preset is required\n";
        return 2;
      }
      std::string label;
      const auto description = resolve_channel(d_channel, d_preset, label);
      qfid::describe_channel(description, label, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
