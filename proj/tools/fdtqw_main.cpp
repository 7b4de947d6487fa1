#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fdtqw/cli_io.hpp"
#include "fdtqw/core_types.hpp"

namespace {

struct AngleOptions {
  std::string alpha = "pi/3";
  std::string beta = "pi/6";
};

struct RunOptions {
  fdtqw::RunConfig config;
  AngleOptions angles;
  std::string config_path;
  CLI::App* sub = nullptr;
};

void add_run_options(CLI::App* sub, RunOptions& opts) {
  opts.sub = sub;
  sub->add_option("--model", opts.config.model, "standard | fib-coin | fib-step")
      ->check(CLI::IsMember({"standard", "fib-coin", "fib-step"}));
  sub->add_option("--alpha", opts.angles.alpha, "coin angle alpha (radians or pi fraction)");
  sub->add_option("--beta", opts.angles.beta, "coin angle beta (radians or pi fraction)");
  sub->add_option("--size", opts.config.n, "lattice sites");
  sub->add_option("--steps", opts.config.steps, "elementary steps (translations)");
  sub->add_option("--init", opts.config.init, "gaussian | delta")
      ->check(CLI::IsMember({"gaussian", "delta"}));
  sub->add_option("--width", opts.config.width_sites, "gaussian width in sites");
  sub->add_option("--site", opts.config.init_site, "delta site (-1 = center)");
  sub->add_option("--snapshot-stride", opts.config.snapshot_stride, "steps between snapshots");
  sub->add_option("--seed", opts.config.seed, "reserved");
  sub->add_option("--output-dir", opts.config.output_dir, "directory for emitted files");
  sub->add_option("--config", opts.config_path, "config file (key = flag name); flags override");
}

// File values fill in whatever the command line did not set; unknown keys are
// rejected so typos surface as usage errors.
void apply_run_config_file(RunOptions& opts, const std::set<std::string>& extra_keys = {}) {
  if (opts.config_path.empty()) return;
  const auto values = fdtqw::read_config_file(opts.config_path);
  static const std::set<std::string> run_keys = {"model", "alpha",           "beta", "size",
                                                 "steps", "init",            "width", "site",
                                                 "seed",  "snapshot-stride", "output-dir"};
  for (const auto& [key, value] : values) {
    if (run_keys.count(key) == 0 && extra_keys.count(key) == 0)
      throw std::invalid_argument(opts.config_path + ": unknown key '" + key + "'");
    if (opts.sub->count("--" + key) > 0) continue;  // flags override the file
    if (key == "model") opts.config.model = value;
    else if (key == "alpha") opts.angles.alpha = value;
    else if (key == "beta") opts.angles.beta = value;
    else if (key == "size") opts.config.n = std::stoi(value);
    else if (key == "steps") opts.config.steps = std::stol(value);
    else if (key == "init") opts.config.init = value;
    else if (key == "width") opts.config.width_sites = std::stod(value);
    else if (key == "site") opts.config.init_site = std::stol(value);
    else if (key == "snapshot-stride") opts.config.snapshot_stride = std::stol(value);
    else if (key == "seed") opts.config.seed = std::stol(value);
    else if (key == "output-dir") opts.config.output_dir = value;
  }
}

fdtqw::RunConfig resolve(RunOptions& opts, const std::set<std::string>& extra_keys = {}) {
  apply_run_config_file(opts, extra_keys);
  opts.config.alpha = fdtqw::parse_angle(opts.angles.alpha);
  opts.config.beta = fdtqw::parse_angle(opts.angles.beta);
  return opts.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci discrete-time quantum walk simulator"};
  app.require_subcommand(1);

  RunOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a walk and emit density/spread/summary");
  add_run_options(simulate, sim);

  std::string sweep_model = "fib-coin";
  int sweep_resolution = 50;
  bool sweep_empirical = false;
  int sweep_threads = 0;
  std::string sweep_output = ".";
  std::string sweep_config_path;
  CLI::App* sweep = app.add_subcommand("velocity-sweep", "analytic velocity over [0, pi/2]^2");
  sweep->add_option("--model", sweep_model, "fib-coin | fib-step")
      ->check(CLI::IsMember({"fib-coin", "fib-step"}));
  sweep->add_option("--resolution", sweep_resolution, "grid points per axis");
  sweep->add_flag("--empirical", sweep_empirical, "also measure front speeds from short walks");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware)");
  sweep->add_option("--output-dir", sweep_output, "directory for contour.csv");
  sweep->add_option("--config", sweep_config_path, "config file (key = flag name); flags override");

  std::string stencil_model = "fib-coin";
  AngleOptions stencil_angles;
  std::string stencil_config_path;
  CLI::App* stencil = app.add_subcommand("stencil", "closed-form vs composed coefficient tables");
  stencil->add_option("--model", stencil_model, "fib-coin | fib-step")
      ->check(CLI::IsMember({"fib-coin", "fib-step"}));
  stencil->add_option("--alpha", stencil_angles.alpha, "coin angle alpha");
  stencil->add_option("--beta", stencil_angles.beta, "coin angle beta");
  stencil->add_option("--config", stencil_config_path, "config file (key = flag name); flags override");

  RunOptions exp;
  long exp_jmin = 0, exp_jmax = 0;
  CLI::App* exponent = app.add_subcommand("exponent", "fit the spreading exponent of sigma_j");
  add_run_options(exponent, exp);
  exponent->add_option("--j-min", exp_jmin, "fit window start (0 = auto)");
  exponent->add_option("--j-max", exp_jmax, "fit window end (0 = steps)");

  RunOptions cmp;
  std::vector<int> cmp_resolutions{512, 1024, 2048};
  CLI::App* compare = app.add_subcommand("dirac-compare", "walk vs analytic transport across resolutions");
  add_run_options(compare, cmp);
  compare->add_option("--resolutions", cmp_resolutions, "lattice sizes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) return fdtqw::cmd_simulate(resolve(sim));
    if (*sweep) {
      if (!sweep_config_path.empty()) {
        const auto values = fdtqw::read_config_file(sweep_config_path);
        static const std::set<std::string> keys = {"model", "resolution", "empirical", "threads",
                                                   "output-dir"};
        for (const auto& [key, value] : values) {
          if (keys.count(key) == 0)
            throw std::invalid_argument(sweep_config_path + ": unknown key '" + key + "'");
          if (sweep->count("--" + key) > 0) continue;
          if (key == "model") sweep_model = value;
          else if (key == "resolution") sweep_resolution = std::stoi(value);
          else if (key == "empirical") sweep_empirical = value == "true" || value == "1";
          else if (key == "threads") sweep_threads = std::stoi(value);
          else if (key == "output-dir") sweep_output = value;
        }
      }
      const auto kind = sweep_model == "fib-coin" ? fdtqw::ModelKind::FibCoin : fdtqw::ModelKind::FibStep;
      return fdtqw::cmd_velocity_sweep(kind, sweep_resolution, sweep_empirical, sweep_output,
                                       sweep_threads);
    }
    if (*stencil) {
      if (!stencil_config_path.empty()) {
        const auto values = fdtqw::read_config_file(stencil_config_path);
        static const std::set<std::string> keys = {"model", "alpha", "beta"};
        for (const auto& [key, value] : values) {
          if (keys.count(key) == 0)
            throw std::invalid_argument(stencil_config_path + ": unknown key '" + key + "'");
          if (stencil->count("--" + key) > 0) continue;
          if (key == "model") stencil_model = value;
          else if (key == "alpha") stencil_angles.alpha = value;
          else if (key == "beta") stencil_angles.beta = value;
        }
      }
      const auto kind = stencil_model == "fib-coin" ? fdtqw::ModelKind::FibCoin : fdtqw::ModelKind::FibStep;
      return fdtqw::cmd_stencil(kind, fdtqw::parse_angle(stencil_angles.alpha),
                                fdtqw::parse_angle(stencil_angles.beta));
    }
    if (*exponent) {
      const fdtqw::RunConfig config = resolve(exp, {"j-min", "j-max"});
      if (exponent->count("--j-min") == 0 && !exp.config_path.empty()) {
        const auto values = fdtqw::read_config_file(exp.config_path);
        if (values.count("j-min")) exp_jmin = std::stol(values.at("j-min"));
        if (values.count("j-max")) exp_jmax = std::stol(values.at("j-max"));
      }
      return fdtqw::cmd_exponent(config, exp_jmin, exp_jmax);
    }
    if (*compare) {
      const fdtqw::RunConfig config = resolve(cmp, {"resolutions"});
      if (compare->count("--resolutions") == 0 && !cmp.config_path.empty()) {
        const auto values = fdtqw::read_config_file(cmp.config_path);
        if (values.count("resolutions")) {
          cmp_resolutions.clear();
          std::string item;
          std::stringstream ss(values.at("resolutions"));
          while (std::getline(ss, item, ',')) cmp_resolutions.push_back(std::stoi(item));
        }
      }
      return fdtqw::cmd_dirac_compare(config, cmp_resolutions);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
