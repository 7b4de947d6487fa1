#pragma once

#include <map>
#include <string>
#include <vector>

#include "fdtqw/core_types.hpp"

namespace fdtqw {

/// One experiment's parameters. Defaults reproduce the reference density
/// profile setup: 2^11 sites, 800 steps, Gaussian packet of width 20 sites
/// with spin (1, i)/sqrt(2).
struct RunConfig {
  std::string model = "fib-coin";
  double alpha = kPi / 3;
  double beta = kPi / 6;
  int n = 2048;
  long steps = 800;
  std::string init = "gaussian";  // "gaussian" or "delta"
  double width_sites = 20.0;
  long init_site = -1;  // delta location; -1 means the center site
  long snapshot_stride = 8;
  long seed = 0;  // reserved; the walks are deterministic
  std::string output_dir = ".";
};

/// Radians, either plain ("0.785", "1e-2") or a pi fraction
/// ("pi", "pi/4", "3pi/4", "-2pi/5", "0.5pi").
double parse_angle(const std::string& text);

/// "key = value" config file: '#' comments and blank lines ignored, values
/// optionally quoted. Keys are flag names without the leading dashes.
std::map<std::string, std::string> read_config_file(const std::string& path);

WalkModel model_from_config(const RunConfig& config);
SpinorField initial_from_config(const RunConfig& config);

/// Run the walk and write density.csv, spread.csv and summary.json into
/// config.output_dir. Returns a process exit code.
int cmd_simulate(const RunConfig& config);

/// Analytic velocity over a grid on [0, pi/2]^2, written to contour.csv in
/// output_dir. With `empirical`, short walks add measured front speeds and
/// the |analytic - empirical| column; grid points run on `threads` workers.
int cmd_velocity_sweep(ModelKind model, int grid_resolution, bool empirical,
                       const std::string& output_dir, int threads = 0);

/// Print the closed-form and composition coefficient tables side by side.
/// Exit code 2 when they disagree beyond 1e-9.
int cmd_stencil(ModelKind model, double alpha, double beta);

/// Run the walk, fit the spreading exponent of sigma_j over [j_min, j_max],
/// write spread.csv and exponent.json. Exit code 2 when a walk that should
/// spread ballistically (analytic v > 0.3) fits outside [0.95, 1.05].
int cmd_exponent(const RunConfig& config, long j_min, long j_max);

/// Walk vs analytic transport at fixed physical time across resolutions
/// (steps and packet width scale with n). Writes convergence.csv; exit code
/// 2 when the L1 distance fails to decrease strictly.
int cmd_dirac_compare(const RunConfig& config, std::vector<int> resolutions);

}  // namespace fdtqw
