#include "fdtqw/cli_io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fdtqw/coin_sequences.hpp"
#include "fdtqw/continuum.hpp"
#include "fdtqw/observables.hpp"
#include "fdtqw/stencil.hpp"
#include "fdtqw/walk_engine.hpp"

namespace fdtqw {

namespace {

using json = nlohmann::ordered_json;

const cplx kSpinUp = cplx(1.0 / std::sqrt(2.0), 0.0);
const cplx kSpinDown = cplx(0.0, 1.0 / std::sqrt(2.0));

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "standard") return ModelKind::Standard;
  if (name == "fib-coin") return ModelKind::FibCoin;
  if (name == "fib-step") return ModelKind::FibStep;
  throw std::invalid_argument("unknown model '" + name + "' (standard|fib-coin|fib-step)");
}

// Letters actually applied: classify each block coin by determinant sign.
json coin_word_prefix(const WalkModel& model, int count) {
  const std::vector<CoinMatrix> block = coin_block(model);
  json letters = json::array();
  for (int j = 0; j < count; ++j) {
    const CoinMatrix& c = block[j % block.size()];
    const double angle = std::atan2(c.c10.real(), c.c00.real());
    const bool reflection = c.det().real() < 0.0;
    letters.push_back({{"type", reflection ? "hadamard" : "rotation"}, {"angle", angle}});
  }
  return letters;
}

json config_echo(const RunConfig& config) {
  json echo;
  echo["model"] = config.model;
  echo["alpha"] = config.alpha;
  echo["beta"] = config.beta;
  echo["size"] = config.n;
  echo["steps"] = config.steps;
  echo["init"] = config.init;
  if (config.init == "gaussian") echo["width"] = config.width_sites;
  if (config.init == "delta") echo["site"] = config.init_site < 0 ? config.n / 2 : config.init_site;
  echo["snapshot-stride"] = config.snapshot_stride;
  echo["seed"] = config.seed;
  echo["output-dir"] = config.output_dir;
  return echo;
}

void write_density_csv(std::ofstream& out, const SpinorField& field) {
  out << "m,x,rho,re_u,im_u,re_d,im_d\n";
  const std::vector<double> rho = density(field);
  for (int m = 0; m < field.size(); ++m) {
    out << m << ',' << g17(m * field.dx) << ',' << g17(rho[m]) << ',' << g17(field.u[m].real())
        << ',' << g17(field.u[m].imag()) << ',' << g17(field.d[m].real()) << ','
        << g17(field.d[m].imag()) << '\n';
  }
}

void write_spread_csv(std::ofstream& out, const SpreadSeries& series) {
  out << "j,norm,mean,sigma\n";
  for (const auto& e : series.entries)
    out << e.j << ',' << g17(e.norm) << ',' << g17(e.mean) << ',' << g17(e.sigma) << '\n';
}

// Spread series that stops at the first snapshot whose moments are
// wrap-ambiguous instead of failing the whole run.
SpreadSeries guarded_spread_series(const WalkRun& walk, std::vector<std::string>& warnings) {
  SpreadSeries series;
  series.model = walk.model.kind;
  series.angles = walk.model.angles;
  for (const auto& [j, field] : walk.snapshots) {
    try {
      const std::vector<double> rho = density(field);
      const Moments m = j == 0 ? moments(rho, field.dx)
                               : moments_about(rho, field.dx, series.entries.front().mean);
      series.entries.push_back({j, field.norm_sq(), m.mean_sites, m.sigma_sites});
    } catch (const std::domain_error& err) {
      warnings.push_back("spread series truncated at step " + std::to_string(j) + ": " +
                         err.what());
      break;
    }
  }
  return series;
}

}  // namespace

double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?)\s*(\d+\.?\d*|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*|\.\d+))?\s*$)",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double sign = m[1].str() == "-" ? -1.0 : 1.0;
    const double num = m[2].matched ? std::stod(m[2].str()) : 1.0;
    const double den = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (den == 0.0) throw std::invalid_argument("zero denominator in angle '" + text + "'");
    return sign * num * kPi / den;
  }
  try {
    size_t pos = 0;
    const double value = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle '" + text + "'");
  }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  const auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return std::string();
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
  };
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\'')))
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    values[key] = value;
  }
  return values;
}

WalkModel model_from_config(const RunConfig& config) {
  switch (model_kind_from_name(config.model)) {
    case ModelKind::Standard: return WalkModel::standard(config.alpha);
    case ModelKind::FibCoin: return WalkModel::fib_coin(AnglePair(config.alpha, config.beta));
    case ModelKind::FibStep: return WalkModel::fib_step(AnglePair(config.alpha, config.beta));
  }
  throw std::logic_error("unreachable");
}

SpinorField initial_from_config(const RunConfig& config) {
  if (config.n < 2) throw std::invalid_argument("lattice size must be >= 2");
  const int center = config.n / 2;
  if (config.init == "gaussian") {
    if (config.width_sites < 1.0) throw std::invalid_argument("gaussian width must be >= 1 site");
    return SpinorField::gaussian(config.n, center, config.width_sites, kSpinUp, kSpinDown);
  }
  if (config.init == "delta") {
    const long site = config.init_site < 0 ? center : config.init_site;
    if (site >= config.n) throw std::invalid_argument("delta site out of range");
    return SpinorField::delta(config.n, static_cast<int>(site), kSpinUp, kSpinDown);
  }
  throw std::invalid_argument("unknown init '" + config.init + "' (gaussian|delta)");
}

std::string initial_desc(const RunConfig& config) {
  if (config.init == "delta")
    return "delta(site=" +
           std::to_string(config.init_site < 0 ? config.n / 2 : config.init_site) + ")";
  return "gaussian(width=" + std::to_string(config.width_sites) + ")";
}

int cmd_simulate(const RunConfig& config) {
  const WalkModel model = model_from_config(config);
  const SpinorField initial = initial_from_config(config);
  WalkRun walk = run(model, initial, config.steps, config.snapshot_stride);
  walk.initial_desc = initial_desc(config);

  std::vector<std::string> warnings;
  const SpreadSeries series = guarded_spread_series(walk, warnings);

  {
    auto out = open_output(config.output_dir, "density.csv");
    write_density_csv(out, walk.final_state());
  }
  {
    auto out = open_output(config.output_dir, "spread.csv");
    write_spread_csv(out, series);
  }

  const ContinuumParams params = continuum_params(model.kind, model.angles);

  json summary;
  summary["config"] = config_echo(config);
  summary["analytic"] = {{"p1", params.p1},
                         {"p2", params.p2},
                         {"omega", params.omega},
                         {"velocity", params.v},
                         {"basis_degenerate", params.basis.degenerate},
                         {"velocity_zero", params.basis.velocity_zero}};

  json empirical;
  try {
    empirical["front_velocity"] = front_velocity(walk, 0.99);
  } catch (const std::exception& err) {
    empirical["front_velocity"] = nullptr;
    warnings.push_back(std::string("front velocity unavailable: ") + err.what());
  }
  try {
    const long j_min = std::min<long>(100, std::max<long>(1, config.steps / 8));
    const ExponentFit fit = spreading_exponent(series, j_min, config.steps);
    empirical["eta"] = fit.fitted ? json(fit.eta) : json(nullptr);
    empirical["eta_window"] = {fit.j_min, fit.j_max};
    empirical["eta_residual"] = fit.residual;
    empirical["eta_fitted"] = fit.fitted;
  } catch (const std::exception& err) {
    empirical["eta"] = nullptr;
    empirical["eta_fitted"] = false;
    warnings.push_back(std::string("exponent fit unavailable: ") + err.what());
  }
  summary["empirical"] = empirical;
  summary["norm_drift"] = std::abs(1.0 - walk.final_state().norm_sq());
  summary["coin_word_prefix"] = coin_word_prefix(model, 12);
  summary["warnings"] = warnings;

  auto out = open_output(config.output_dir, "summary.json");
  out << summary.dump(2) << '\n';
  return 0;
}

int cmd_velocity_sweep(ModelKind model, int grid_resolution, bool empirical,
                       const std::string& output_dir, int threads) {
  if (model == ModelKind::Standard)
    throw std::invalid_argument("velocity sweep runs over fib-coin or fib-step");
  if (grid_resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");

  const int res = grid_resolution;
  const int total = res * res;
  std::vector<double> analytic(total), measured(total, 0.0);

  for (int idx = 0; idx < total; ++idx) {
    const double a = (idx / res) * (kPi / 2) / (res - 1);
    const double b = (idx % res) * (kPi / 2) / (res - 1);
    analytic[idx] = analytic_velocity(model, AnglePair(a, b));
  }

  if (empirical) {
    // Short independent walks per grid point. 512 sites and 120 steps keep a
    // full sweep cheap while the 0.99-quantile front is still well formed.
    const int n_emp = 512;
    const long steps_emp = 120;
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
        const double a = (idx / res) * (kPi / 2) / (res - 1);
        const double b = (idx % res) * (kPi / 2) / (res - 1);
        const WalkModel wm = model == ModelKind::FibCoin
                                 ? WalkModel::fib_coin(AnglePair(a, b))
                                 : WalkModel::fib_step(AnglePair(a, b));
        const SpinorField init =
            SpinorField::gaussian(n_emp, n_emp / 2, 5.0, kSpinUp, kSpinDown);
        try {
          const WalkRun walk = run(wm, init, steps_emp, 4);
          measured[idx] = front_velocity(walk, 0.99);
        } catch (const std::exception&) {
          measured[idx] = std::numeric_limits<double>::quiet_NaN();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto out = open_output(output_dir, "contour.csv");
  out << (empirical ? "alpha,beta,v_analytic,v_empirical,abs_error\n" : "alpha,beta,v_analytic\n");
  for (int idx = 0; idx < total; ++idx) {
    const double a = (idx / res) * (kPi / 2) / (res - 1);
    const double b = (idx % res) * (kPi / 2) / (res - 1);
    out << g17(a) << ',' << g17(b) << ',' << g17(analytic[idx]);
    if (empirical)
      out << ',' << g17(measured[idx]) << ',' << g17(std::abs(analytic[idx] - measured[idx]));
    out << '\n';
  }
  return 0;
}

int cmd_stencil(ModelKind model, double alpha, double beta) {
  const AnglePair angles(alpha, beta);
  const StencilCoefficients closed = closed_form_coefficients(model, angles);
  const StencilCoefficients oracle = oracle_coefficients(model, angles);
  const double worst = max_table_difference(closed, oracle);

  std::printf("model %s  alpha %.15g  beta %.15g\n", model_name(model), angles.alpha, angles.beta);
  std::printf("%6s %22s %22s %22s %22s\n", "offset", "A closed", "A composed", "B closed",
              "B composed");
  for (int i = 0; i < 7; ++i)
    std::printf("%6d %22.15e %22.15e %22.15e %22.15e\n", StencilCoefficients::offsets[i],
                closed.A[i], oracle.A[i], closed.B[i], oracle.B[i]);
  std::printf("max discrepancy %.3e\n", worst);
  return worst > 1e-9 ? 2 : 0;
}

int cmd_exponent(const RunConfig& config, long j_min, long j_max) {
  const WalkModel model = model_from_config(config);
  const SpinorField initial = initial_from_config(config);
  WalkRun walk = run(model, initial, config.steps, config.snapshot_stride);
  walk.initial_desc = initial_desc(config);

  std::vector<std::string> warnings;
  const SpreadSeries series = guarded_spread_series(walk, warnings);
  if (j_min <= 0) j_min = std::min<long>(100, std::max<long>(1, config.steps / 8));
  if (j_max <= 0) j_max = config.steps;
  const double v = analytic_velocity(model.kind, model.angles);

  ExponentFit fit;
  try {
    fit = spreading_exponent(series, j_min, j_max);
  } catch (const std::exception& err) {
    warnings.push_back(std::string("exponent fit unavailable: ") + err.what());
  }

  {
    auto out = open_output(config.output_dir, "spread.csv");
    write_spread_csv(out, series);
  }
  json report;
  report["config"] = config_echo(config);
  report["v_analytic"] = v;
  report["eta"] = fit.fitted ? json(fit.eta) : json(nullptr);
  report["window"] = {fit.j_min, fit.j_max};
  report["residual"] = fit.residual;
  report["fitted"] = fit.fitted;
  report["warnings"] = warnings;
  auto out = open_output(config.output_dir, "exponent.json");
  out << report.dump(2) << '\n';

  if (fit.fitted)
    std::printf("eta = %.6f over steps [%ld, %ld] (v_analytic %.4f)\n", fit.eta, fit.j_min,
                fit.j_max, v);
  else
    std::printf("eta unfit over steps [%ld, %ld] (v_analytic %.4f)\n", j_min, j_max, v);

  // Ballistic band check only where the continuum predicts a clear front.
  if (v > 0.3 && (!fit.fitted || fit.eta < 0.95 || fit.eta > 1.05)) return 2;
  return 0;
}

int cmd_dirac_compare(const RunConfig& config, std::vector<int> resolutions) {
  if (resolutions.size() < 2) throw std::invalid_argument("need at least 2 resolutions");
  std::sort(resolutions.begin(), resolutions.end());
  if (config.init != "gaussian")
    throw std::invalid_argument("dirac-compare uses the gaussian initial condition");

  const WalkModel base_model = model_from_config(config);
  const ContinuumParams params = continuum_params(base_model.kind, base_model.angles);

  // Fixed physical time and packet width: scale steps and width with n
  // relative to the configured reference resolution.
  std::vector<double> l1(resolutions.size());
  for (size_t i = 0; i < resolutions.size(); ++i) {
    const int n = resolutions[i];
    const long steps = std::max<long>(1, std::lround(static_cast<double>(config.steps) * n / config.n));
    const double width = config.width_sites * n / config.n;
    const SpinorField initial = SpinorField::gaussian(n, n / 2, width, kSpinUp, kSpinDown);
    const WalkRun walk = run(base_model, initial, steps, steps);
    const SpinorField reference = dirac_reference(initial, params, steps * initial.dx);
    const std::vector<double> rho_walk = density(walk.final_state());
    const std::vector<double> rho_ref = density(reference);
    double dist = 0.0;
    for (int m = 0; m < n; ++m) dist += std::abs(rho_walk[m] - rho_ref[m]);
    l1[i] = dist;
  }

  auto out = open_output(config.output_dir, "convergence.csv");
  out << "n,L1_distance\n";
  bool monotone = true;
  for (size_t i = 0; i < resolutions.size(); ++i) {
    out << resolutions[i] << ',' << g17(l1[i]) << '\n';
    if (i > 0 && !(l1[i] < l1[i - 1])) monotone = false;
  }
  std::printf("L1 distances:");
  for (double v : l1) std::printf(" %.6g", v);
  std::printf("  -> %s\n", monotone ? "strictly decreasing" : "NOT monotone");
  return monotone ? 0 : 2;
}

}  // namespace fdtqw
