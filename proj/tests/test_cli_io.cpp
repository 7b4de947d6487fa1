#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fdtqw/cli_io.hpp"
#include "fdtqw/continuum.hpp"

using namespace fdtqw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fdtqw_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("angle parsing") {
  CHECK(parse_angle("pi") == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(parse_angle("pi/4") == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(parse_angle("3pi/4") == doctest::Approx(3 * kPi / 4).epsilon(1e-15));
  CHECK(parse_angle("-pi/6") == doctest::Approx(-kPi / 6).epsilon(1e-15));
  CHECK(parse_angle("2*pi/5") == doctest::Approx(2 * kPi / 5).epsilon(1e-15));
  CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(parse_angle("PI/2") == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(parse_angle("0.25") == doctest::Approx(0.25));
  CHECK(parse_angle("1e-3") == doctest::Approx(1e-3));
  CHECK(parse_angle("-0.7") == doctest::Approx(-0.7));
  CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
}

TEST_CASE("config file reader") {
  const fs::path dir = temp_dir("config_file");
  {
    std::ofstream out(dir / "run.ini");
    out << "# comment line\n"
        << "alpha = pi/2\n"
        << "size=128   # trailing comment\n"
        << "output-dir = \"out dir\"\n"
        << "\n";
  }
  const auto values = read_config_file((dir / "run.ini").string());
  CHECK(values.at("alpha") == "pi/2");
  CHECK(values.at("size") == "128");
  CHECK(values.at("output-dir") == "out dir");
  CHECK(values.size() == 3);

  {
    std::ofstream out(dir / "bad.ini");
    out << "just some words\n";
  }
  CHECK_THROWS_AS(read_config_file((dir / "bad.ini").string()), std::invalid_argument);
  CHECK_THROWS_AS(read_config_file((dir / "missing.ini").string()), std::invalid_argument);
}

TEST_CASE("config to model and initial condition") {
  RunConfig config;
  config.model = "fib-step";
  config.alpha = 0.8;
  config.beta = 0.2;
  const WalkModel model = model_from_config(config);
  CHECK(model.kind == ModelKind::FibStep);
  CHECK(model.angles.alpha == doctest::Approx(0.8));

  config.model = "nope";
  CHECK_THROWS_AS(model_from_config(config), std::invalid_argument);

  config.model = "fib-coin";
  config.n = 128;
  config.init = "delta";
  const SpinorField delta = initial_from_config(config);
  CHECK(std::abs(delta.u[64]) > 0.0);

  config.init = "gaussian";
  config.width_sites = 0.5;
  CHECK_THROWS_AS(initial_from_config(config), std::invalid_argument);
  config.width_sites = 4.0;
  CHECK(std::abs(initial_from_config(config).norm_sq() - 1.0) < 1e-12);

  config.init = "plane-wave";
  CHECK_THROWS_AS(initial_from_config(config), std::invalid_argument);
}

TEST_CASE("simulate writes the three files with exact headers") {
  RunConfig config;
  config.model = "fib-coin";
  config.alpha = kPi / 3;
  config.beta = kPi / 6;
  config.n = 256;
  config.steps = 120;
  config.snapshot_stride = 8;
  const fs::path dir = temp_dir("simulate");
  config.output_dir = dir.string();

  CHECK(cmd_simulate(config) == 0);

  const std::string dens = slurp(dir / "density.csv");
  CHECK(dens.rfind("m,x,rho,re_u,im_u,re_d,im_d\n", 0) == 0);
  CHECK(std::count(dens.begin(), dens.end(), '\n') == 257);  // header + one row per site

  const std::string spread = slurp(dir / "spread.csv");
  CHECK(spread.rfind("j,norm,mean,sigma\n", 0) == 0);

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["config"]["model"] == "fib-coin");
  CHECK(summary["config"]["size"] == 256);
  CHECK(summary["analytic"].contains("p1"));
  CHECK(summary["analytic"].contains("omega"));
  CHECK(summary["analytic"]["basis_degenerate"].is_boolean());
  CHECK(summary["norm_drift"].get<double>() < 1e-10);
  CHECK(summary["coin_word_prefix"].size() == 12);

  const double v = summary["analytic"]["velocity"].get<double>();
  CHECK(v == doctest::Approx(analytic_velocity(ModelKind::FibCoin, AnglePair(kPi / 3, kPi / 6))));

  // angles echoed with full precision
  const double echoed = summary["config"]["alpha"].get<double>();
  CHECK(echoed == kPi / 3);

  // the word prefix repeats the six-coin block
  const auto& prefix = summary["coin_word_prefix"];
  for (int j = 0; j < 6; ++j) {
    CHECK(prefix[j]["type"] == prefix[j + 6]["type"]);
    CHECK(prefix[j]["angle"].get<double>() == prefix[j + 6]["angle"].get<double>());
  }
  CHECK(prefix[0]["type"] == "hadamard");
  CHECK(prefix[1]["type"] == "rotation");
}

TEST_CASE("simulate output is byte-deterministic") {
  RunConfig config;
  config.model = "fib-step";
  config.alpha = parse_angle("pi/4");
  config.beta = parse_angle("pi/8");
  config.n = 256;
  config.steps = 90;
  config.snapshot_stride = 6;

  const fs::path a = temp_dir("determinism_a");
  const fs::path b = temp_dir("determinism_b");
  config.output_dir = a.string();
  REQUIRE(cmd_simulate(config) == 0);
  config.output_dir = b.string();
  REQUIRE(cmd_simulate(config) == 0);

  CHECK(slurp(a / "density.csv") == slurp(b / "density.csv"));
  CHECK(slurp(a / "spread.csv") == slurp(b / "spread.csv"));
  // summary differs only in the echoed output_dir
  std::string sa = slurp(a / "summary.json"), sb = slurp(b / "summary.json");
  const auto strip = [](std::string& s, const std::string& needle) {
    const size_t pos = s.find(needle);
    REQUIRE(pos != std::string::npos);
    s.erase(pos, s.find('\n', pos) - pos);
  };
  strip(sa, "\"output-dir\"");
  strip(sb, "\"output-dir\"");
  CHECK(sa == sb);
}

TEST_CASE("delta init simulate emits a one-hot density") {
  RunConfig config;
  config.model = "standard";
  config.alpha = 0.0;
  config.n = 128;
  config.steps = 30;
  config.init = "delta";
  config.snapshot_stride = 30;
  const fs::path dir = temp_dir("delta");
  config.output_dir = dir.string();
  REQUIRE(cmd_simulate(config) == 0);

  std::ifstream in(dir / "density.csv");
  std::string line;
  std::getline(in, line);  // header
  int hot = -1;
  for (int m = 0; m < 128; ++m) {
    std::getline(in, line);
    const auto cols = split(line, ',');
    REQUIRE(cols.size() == 7);
    if (std::stod(cols[2]) > 0.5) hot = m;
  }
  CHECK(hot == (64 + 30) % 128);
}

TEST_CASE("velocity sweep grid and columns") {
  const fs::path dir = temp_dir("sweep");
  CHECK(cmd_velocity_sweep(ModelKind::FibCoin, 5, false, dir.string()) == 0);
  std::ifstream in(dir / "contour.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,beta,v_analytic");
  int rows = 0;
  double corner_v = -1.0;
  while (std::getline(in, line)) {
    const auto cols = split(line, ',');
    REQUIRE(cols.size() == 3);
    const double a = std::stod(cols[0]), b = std::stod(cols[1]), v = std::stod(cols[2]);
    if (a == 0.0 && b == 0.0) corner_v = v;
    const TransportCoefficients tc = transport_coefficients(ModelKind::FibCoin, AnglePair(a, b));
    CHECK(std::abs(v - std::hypot(tc.p1, tc.p2)) < 1e-10);
    ++rows;
  }
  CHECK(rows == 25);
  CHECK(corner_v == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(cmd_velocity_sweep(ModelKind::FibCoin, 1, false, dir.string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(cmd_velocity_sweep(ModelKind::Standard, 5, false, dir.string()),
                  std::invalid_argument);
}

TEST_CASE("velocity sweep with empirical column") {
  const fs::path dir = temp_dir("sweep_emp");
  CHECK(cmd_velocity_sweep(ModelKind::FibStep, 3, true, dir.string(), 2) == 0);
  std::ifstream in(dir / "contour.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,beta,v_analytic,v_empirical,abs_error");
  int measured = 0, rows = 0;
  while (std::getline(in, line)) {
    const auto cols = split(line, ',');
    REQUIRE(cols.size() == 5);
    ++rows;
    const double v_emp = std::stod(cols[3]);
    if (!std::isnan(v_emp)) {
      ++measured;
      CHECK(std::abs(std::stod(cols[2]) - v_emp) == doctest::Approx(std::stod(cols[4])));
    }
  }
  CHECK(rows == 9);
  CHECK(measured >= 4);  // fast corners measure cleanly; degenerate points may not
}

TEST_CASE("stencil report exits zero when tables agree") {
  CHECK(cmd_stencil(ModelKind::FibCoin, 1.0, 0.3) == 0);
  CHECK(cmd_stencil(ModelKind::FibStep, parse_angle("pi/4"), parse_angle("pi/8")) == 0);
}

TEST_CASE("exponent command fits ballistic growth") {
  RunConfig config;
  config.model = "fib-coin";
  config.alpha = parse_angle("pi/3");
  config.beta = parse_angle("pi/6");
  config.n = 1024;
  config.steps = 400;
  config.init = "delta";
  config.snapshot_stride = 4;
  const fs::path dir = temp_dir("exponent");
  config.output_dir = dir.string();

  CHECK(cmd_exponent(config, 50, 400) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "exponent.json"));
  CHECK(report["fitted"].get<bool>());
  CHECK(report["eta"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fs::exists(dir / "spread.csv"));
}

TEST_CASE("dirac comparison decreases with resolution") {
  RunConfig config;
  config.model = "fib-coin";
  config.alpha = kPi / 4;
  config.beta = 0.0;
  config.n = 512;  // reference resolution for scaling
  config.steps = 200;
  config.width_sites = 5.0;
  const fs::path dir = temp_dir("dirac");
  config.output_dir = dir.string();

  CHECK(cmd_dirac_compare(config, {256, 512, 1024}) == 0);
  std::ifstream in(dir / "convergence.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,L1_distance");
  std::vector<double> l1;
  while (std::getline(in, line)) l1.push_back(std::stod(split(line, ',')[1]));
  REQUIRE(l1.size() == 3);
  CHECK(l1[1] < l1[0]);
  CHECK(l1[2] < l1[1]);

  CHECK_THROWS_AS(cmd_dirac_compare(config, {256}), std::invalid_argument);
}
