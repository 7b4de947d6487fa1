#include "fdtqw/continuum.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fdtqw {

namespace {

constexpr double kDegenerateEps = 1e-8;

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place periodic shift by a fractional number of sites: out[m] = in[m - s].
void spectral_shift(std::vector<cplx>& data, double shift_sites) {
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  for (int k = 0; k < n; ++k) {
    const int freq = k <= n / 2 ? k : k - n;  // wavenumber q = 2 pi freq / n
    const double q = kTwoPi * freq / n;
    data[k] *= std::exp(cplx(0.0, -q * shift_sites)) / static_cast<double>(n);
  }
  fftw_execute(bwd);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
}

void periodic_shift(std::vector<cplx>& data, double shift_sites) {
  const int n = static_cast<int>(data.size());
  const double rounded = std::round(shift_sites);
  if (std::abs(shift_sites - rounded) < 1e-9) {
    long k = static_cast<long>(rounded) % n;
    if (k < 0) k += n;
    if (k == 0) return;
    // out[m] = in[m - k]: right rotation by k
    std::vector<cplx> tmp(n);
    for (int m = 0; m < n; ++m) tmp[m] = data[(m - k + n) % n];
    data = std::move(tmp);
  } else {
    spectral_shift(data, shift_sites);
  }
}

AnglePair effective_angles(ModelKind model, const AnglePair& angles) {
  if (model == ModelKind::Standard) return AnglePair(angles.alpha, angles.alpha);
  return angles;
}

}  // namespace

TransportCoefficients transport_coefficients(ModelKind model, const AnglePair& angles) {
  const AnglePair ang = effective_angles(model, angles);
  const double a = ang.alpha, b = ang.beta;
  TransportCoefficients out;
  if (model == ModelKind::FibCoin) {
    out.p1 = -(std::cos(4 * a - 2 * b) + 2 * std::cos(2 * a) + std::cos(2 * b) + 2) / 6.0;
    const double cab = std::cos(a - b);
    out.p2 = -(2.0 / 3.0) * std::sin(2 * a) * cab * cab;
  } else {
    // Step-word forms. The sign of p2 is the one consistent with the first
    // moment of the B table (checked against the composition oracle).
    const double cw = std::cos(2 * a - b), cb = std::cos(b);
    out.p1 = -(cw * cw + 2 * cb * cw) / 3.0;
    out.p2 = -std::sin(2 * a - b) * (cw + 2 * cb) / 3.0;
  }
  return out;
}

double analytic_velocity(ModelKind model, const AnglePair& angles) {
  const AnglePair ang = effective_angles(model, angles);
  const double a = ang.alpha, b = ang.beta;
  if (model == ModelKind::FibCoin) {
    const double ca = std::cos(a);
    const double radicand = 8 * ca * ca * std::cos(2 * a - 2 * b) + std::cos(4 * a - 4 * b) +
                            4 * std::cos(2 * a) + 5;
    return std::sqrt(std::max(radicand, 0.0)) / (3.0 * std::sqrt(2.0));
  }
  return std::abs(std::cos(2 * a - b) + 2 * std::cos(b)) / 3.0;
}

DiagonalBasis diagonalizing_basis(double p1, double p2) {
  DiagonalBasis basis;
  const double omega = std::hypot(p1, p2);
  if (omega <= kDegenerateEps) {
    basis.degenerate = true;
    basis.velocity_zero = true;
    return basis;
  }
  if (std::abs(p2) <= kDegenerateEps) {
    basis.degenerate = true;
    if (p1 < 0.0) {
      basis.up = {cplx(0.0), cplx(1.0)};
      basis.down = {cplx(1.0), cplx(0.0)};
    }
    return basis;
  }
  // The two parallel forms of each eigenvector; pick the better conditioned
  // one, then fix the orientation (positive second component) to match the
  // (p2/(omega -+ p1), 1) normal form.
  double ux, uy, dx_, dy;
  if (p1 > 0.0) {
    ux = omega + p1;
    uy = p2;
  } else {
    ux = p2;
    uy = omega - p1;
  }
  if (p1 >= 0.0) {
    dx_ = -p2;
    dy = omega + p1;
  } else {
    dx_ = omega - p1;
    dy = -p2;
  }
  if (uy < 0.0) {
    ux = -ux;
    uy = -uy;
  }
  if (dy < 0.0) {
    dx_ = -dx_;
    dy = -dy;
  }
  const double un = std::hypot(ux, uy), dn = std::hypot(dx_, dy);
  basis.up = {cplx(ux / un), cplx(uy / un)};
  basis.down = {cplx(dx_ / dn), cplx(dy / dn)};
  return basis;
}

ContinuumParams continuum_params(ModelKind model, const AnglePair& angles) {
  ContinuumParams params;
  params.model = model;
  params.angles = angles;
  const TransportCoefficients tc = transport_coefficients(model, angles);
  params.p1 = tc.p1;
  params.p2 = tc.p2;
  params.omega = std::hypot(tc.p1, tc.p2);
  params.v = analytic_velocity(model, angles);
  params.basis = diagonalizing_basis(tc.p1, tc.p2);
  return params;
}

SpinorField dirac_reference(const SpinorField& initial, const ContinuumParams& params, double t) {
  if (t < 0.0) throw std::invalid_argument("time must be >= 0");
  const int n = initial.size();
  const auto& up = params.basis.up;
  const auto& down = params.basis.down;

  std::vector<cplx> ubar(n), dbar(n);
  for (int m = 0; m < n; ++m) {
    ubar[m] = std::conj(up[0]) * initial.u[m] + std::conj(up[1]) * initial.d[m];
    dbar[m] = std::conj(down[0]) * initial.u[m] + std::conj(down[1]) * initial.d[m];
  }

  const double shift = params.v * t / initial.dx;
  if (shift != 0.0) {
    periodic_shift(ubar, +shift);
    periodic_shift(dbar, -shift);
  }

  SpinorField out(n, initial.dx);
  for (int m = 0; m < n; ++m) {
    out.u[m] = ubar[m] * up[0] + dbar[m] * down[0];
    out.d[m] = ubar[m] * up[1] + dbar[m] * down[1];
  }
  return out;
}

CovariantReport covariant_check(const ContinuumParams& params) {
  CovariantReport report;
  if (params.v <= kDegenerateEps) {
    report.skipped = true;
    return report;
  }
  const cplx i(0.0, 1.0);
  using M = std::array<cplx, 4>;  // row-major 2x2
  const M sx{cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0)};
  const M sy{cplx(0.0), -i, i, cplx(0.0)};
  const M sz{cplx(1.0), cplx(0.0), cplx(0.0), cplx(-1.0)};
  const M id{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)};
  const auto mul = [](const M& a, const M& b) {
    return M{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
             a[2] * b[1] + a[3] * b[3]};
  };
  const auto scale = [](cplx s, const M& a) { return M{s * a[0], s * a[1], s * a[2], s * a[3]}; };
  const auto add = [](const M& a, const M& b) {
    return M{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  };
  const auto max_abs = [](const M& a) {
    double worst = 0.0;
    for (const cplx& e : a) worst = std::max(worst, std::abs(e));
    return worst;
  };

  const M g0 = sx;
  const M g1 = scale(-i, sy);

  double worst = 0.0;
  // (g0)^2 = I, (g1)^2 = -I, {g0, g1} = 0
  worst = std::max(worst, max_abs(add(mul(g0, g0), scale(-1.0, id))));
  worst = std::max(worst, max_abs(add(mul(g1, g1), id)));
  worst = std::max(worst, max_abs(add(mul(g0, g1), mul(g1, g0))));
  // multiplying the diagonal transport equation by g0 and rescaling x by v
  // gives the covariant form iff g0 g1 = sigma_z
  worst = std::max(worst, max_abs(add(mul(g0, g1), scale(-1.0, sz))));
  // spot identity sigma_x sigma_z = -i sigma_y
  worst = std::max(worst, max_abs(add(mul(sx, sz), scale(i, sy))));

  report.max_residual = worst;
  report.pass = worst < 1e-14;
  return report;
}

}  // namespace fdtqw
