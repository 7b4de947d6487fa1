#include "fdtqw/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdtqw {

namespace {

// Circular centroid via the mean resultant vector; throws when the mass has
// no usable concentration direction (e.g. near-uniform density).
double circular_centroid(const std::vector<double>& rho) {
  const int n = static_cast<int>(rho.size());
  double x = 0.0, y = 0.0;
  for (int m = 0; m < n; ++m) {
    const double phi = kTwoPi * m / n;
    x += rho[m] * std::cos(phi);
    y += rho[m] * std::sin(phi);
  }
  if (std::hypot(x, y) < 1e-6)
    throw std::domain_error("density too spread out for a circular centroid");
  double c = std::atan2(y, x) / kTwoPi * n;
  if (c < 0.0) c += n;
  return c;
}

double quantile_radius(const std::vector<double>& rho, double center, double quantile) {
  const int n = static_cast<int>(rho.size());
  std::vector<std::pair<double, double>> by_dist(n);  // (distance, mass)
  for (int m = 0; m < n; ++m) {
    double r = std::abs(m - center);
    r = std::min(r, n - r);
    by_dist[m] = {r, rho[m]};
  }
  std::sort(by_dist.begin(), by_dist.end());
  double cum = 0.0;
  for (const auto& [r, mass] : by_dist) {
    cum += mass;
    if (cum >= quantile) return r;
  }
  return by_dist.back().first;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::domain_error("degenerate abscissa in least-squares fit");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace

std::vector<double> density(const SpinorField& field) {
  const int n = field.size();
  std::vector<double> rho(n);
  for (int m = 0; m < n; ++m) rho[m] = std::norm(field.u[m]) + std::norm(field.d[m]);
  return rho;
}

namespace {

Moments unwrapped_moments(const std::vector<double>& rho, double dx, int cut) {
  const int n = static_cast<int>(rho.size());
  double mean = 0.0, second = 0.0;
  for (int m = 0; m < n; ++m) {
    const double mm = m < cut ? m + n : m;  // positions in [cut, cut + n)
    mean += mm * rho[m];
    second += mm * mm * rho[m];
  }
  Moments out;
  out.sigma_sites = std::sqrt(std::max(second - mean * mean, 0.0));
  out.mean_sites = std::fmod(mean, static_cast<double>(n));  // ring convention: [0, n)
  out.mean_x = out.mean_sites * dx;
  out.sigma_x = out.sigma_sites * dx;
  return out;
}

void check_density(const std::vector<double>& rho) {
  const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-8) throw std::invalid_argument("density must sum to 1");
}

}  // namespace

Moments moments(const std::vector<double>& rho, double dx) {
  const int n = static_cast<int>(rho.size());
  check_density(rho);

  // Cut in the middle of the longest run of effectively empty sites. Width
  // is the discriminator: the near-empty notch between two separated fronts
  // is always narrower than the arc the walk never reached.
  const int min_gap = std::max(n / 10, 2);
  int best_start = 0, best_len = 0, run_start = 0, run_len = 0;
  for (int m = 0; m < 2 * n; ++m) {  // doubled scan catches runs across the seam
    if (rho[m % n] <= 1e-12) {
      if (run_len == 0) run_start = m;
      if (++run_len > best_len && run_start < n) {
        best_len = run_len;
        best_start = run_start;
      }
    } else {
      run_len = 0;
    }
    if (run_len >= 2 * n) break;  // all empty
  }
  if (best_len < min_gap) throw std::domain_error("density support spans the whole ring");
  return unwrapped_moments(rho, dx, (best_start + std::min(best_len, n) / 2) % n);
}

Moments moments_about(const std::vector<double>& rho, double dx, double anchor_site) {
  const int n = static_cast<int>(rho.size());
  check_density(rho);

  const int cut = static_cast<int>(std::llround(anchor_site + n / 2.0)) % n;
  const int half_w = std::max(n / 20, 1);
  double seam_mass = 0.0;
  for (int k = -half_w; k < half_w; ++k) seam_mass += rho[((cut + k) % n + n) % n];
  if (seam_mass > 1e-9) throw std::domain_error("density reaches the seam opposite the anchor");
  return unwrapped_moments(rho, dx, cut);
}

SpreadSeries spread_series(const WalkRun& run) {
  SpreadSeries series;
  series.model = run.model.kind;
  series.angles = run.model.angles;
  series.entries.reserve(run.snapshots.size());
  const double anchor = circular_centroid(density(run.snapshots.front().second));
  for (const auto& [j, field] : run.snapshots) {
    const Moments m = moments_about(density(field), field.dx, anchor);
    series.entries.push_back({j, field.norm_sq(), m.mean_sites, m.sigma_sites});
  }
  return series;
}

ExponentFit spreading_exponent(const SpreadSeries& series, long j_min, long j_max) {
  if (j_min < 1 || j_max < j_min) throw std::invalid_argument("bad exponent fit window");
  std::vector<double> lj, ls;
  bool degenerate = false;
  for (const auto& e : series.entries) {
    if (e.j < j_min || e.j > j_max) continue;
    if (e.sigma <= 0.0) {
      degenerate = true;
      continue;
    }
    lj.push_back(std::log(static_cast<double>(e.j)));
    ls.push_back(std::log(e.sigma));
  }
  ExponentFit fit;
  fit.j_min = j_min;
  fit.j_max = j_max;
  if (degenerate) return fit;  // unfit: flat or empty sigma in window
  if (lj.size() < 8) throw std::invalid_argument("need at least 8 snapshots inside fit window");
  const LineFit lf = least_squares(lj, ls);
  fit.eta = lf.slope;
  fit.residual = lf.rms_residual;
  fit.fitted = true;
  return fit;
}

double front_velocity(const WalkRun& run, double quantile) {
  if (!(quantile > 0.5 && quantile < 1.0))
    throw std::invalid_argument("quantile must be in (0.5, 1)");
  if (run.snapshots.size() < 3) throw std::invalid_argument("run has too few snapshots");

  const int n = run.n;
  const double center = circular_centroid(density(run.snapshots.front().second));
  const double r0 = quantile_radius(density(run.snapshots.front().second), center, quantile);
  const long j_last = run.snapshots.back().first;

  // Only the late half of the trajectory, where the fronts are clear of the
  // initial packet, carries the asymptotic slope.
  std::vector<double> js, rs;
  for (const auto& [j, field] : run.snapshots) {
    if (j == 0 || 2 * j < j_last) continue;
    const double r = quantile_radius(density(field), center, quantile);
    if (r >= n / 2.0 - 2.0) throw std::domain_error("front reached the boundary");
    js.push_back(static_cast<double>(j));
    rs.push_back(r);
  }
  if (js.size() < 2) throw std::invalid_argument("not enough late snapshots for a front fit");
  if (rs.back() < r0 + 20.0) throw std::domain_error("front never cleared the initial packet");
  return least_squares(js, rs).slope;
}

}  // namespace fdtqw
