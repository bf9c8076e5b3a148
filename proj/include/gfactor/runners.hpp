#pragma once

#include <filesystem>
#include <vector>

#include "gfactor/fidelity.hpp"
#include "gfactor/run_config.hpp"

namespace gfactor::cli {

/// Fidelity sweep over (delta2, L) cells with a bounded worker pool.  The
/// reference state at delta1 is solved once per L and shared; results are
/// gathered in grid order, so the output does not depend on the worker count.
struct SweepRequest {
  double delta1 = 0.2;
  std::vector<double> delta2s;
  Boundary bc = Boundary::periodic;
  double theta = 0.0;
  std::vector<int> l_list;
  fidelity::SolverSettings settings;
  int workers = 1;
};

std::vector<fidelity::FidelitySeries> run_parallel_sweep(const SweepRequest& req);

/// Subcommand drivers.  They write CSV/JSON files under the configured output
/// directory and throw ConfigError / lanczos::SolverError on failure.
void run_fig1(const RunConfig& cfg);
void run_fig2(const RunConfig& cfg);
void run_sweep(const RunConfig& cfg);

/// Gaussian and six-vertex validation suite; prints one line per check and
/// returns the number of failed checks.
int run_oracle(const RunConfig& cfg);

std::vector<int> even_sizes(int lmin, int lmax);
std::filesystem::path ensure_out_dir(const RunConfig& cfg);
fidelity::SolverSettings settings_from(const RunConfig& cfg);

}  // namespace gfactor::cli
