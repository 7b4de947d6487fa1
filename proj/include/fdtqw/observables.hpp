#pragma once

#include <vector>

#include "fdtqw/core_types.hpp"
#include "fdtqw/walk_engine.hpp"

namespace fdtqw {

/// Site density |u|^2 + |d|^2.
std::vector<double> density(const SpinorField& field);

/// Mean and standard deviation of a density, in sites and physical units;
/// the mean is reported in [0, n).
struct Moments {
  double mean_sites = 0.0;
  double sigma_sites = 0.0;
  double mean_x = 0.0;
  double sigma_x = 0.0;
};

/// Standalone moments: the ring is cut inside its longest (near-)empty arc
/// and unwrapped there, so a packet straddling the seam gives the same
/// answer as on a line. Throws when no clean gap exists (the state wraps).
Moments moments(const std::vector<double>& rho, double dx);

/// Moments unwrapped opposite a known packet origin. Density alone cannot
/// pick the right cut once a state spreads past a quarter turn (the gap
/// between two ballistic fronts can out-grow the untouched arc), so
/// trajectory observables anchor the cut at the initial centroid. Throws
/// when the seam opposite the anchor carries mass.
Moments moments_about(const std::vector<double>& rho, double dx, double anchor_site);

/// Norm / mean / sigma per snapshot of a run (sites).
struct SpreadSeries {
  ModelKind model = ModelKind::Standard;
  AnglePair angles;
  struct Entry {
    long j = 0;
    double norm = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
  };
  std::vector<Entry> entries;
};

SpreadSeries spread_series(const WalkRun& run);

/// Least-squares slope of log sigma_j vs log j over a step window.
/// `fitted` is false for degenerate series (non-positive sigma in window).
struct ExponentFit {
  double eta = 0.0;
  long j_min = 0;
  long j_max = 0;
  double residual = 0.0;
  bool fitted = false;
};

ExponentFit spreading_exponent(const SpreadSeries& series, long j_min, long j_max);

/// Empirical front speed in sites per step: for late snapshots, the radius
/// around the initial centroid containing `quantile` of the probability,
/// fitted linearly against the step index. Throws if the front reaches the
/// boundary or never clears the initial packet.
double front_velocity(const WalkRun& run, double quantile);

}  // namespace fdtqw
