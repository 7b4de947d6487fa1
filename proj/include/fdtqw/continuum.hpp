#pragma once

#include <array>

#include "fdtqw/core_types.hpp"

namespace fdtqw {

/// First moments (p1, p2) of the six-step map; entries of the symmetric
/// traceless matrix P = [[p1, p2], [p2, -p1]] in the transport equation
/// dt Psi + P dx Psi = 0. Standard(theta) is handled as the constant word
/// (theta, theta, theta), i.e. the FibStep forms at alpha = beta = theta.
struct TransportCoefficients {
  double p1 = 0.0;
  double p2 = 0.0;
};

TransportCoefficients transport_coefficients(ModelKind model, const AnglePair& angles);

/// Closed-form propagation speed. Equals sqrt(p1^2 + p2^2) identically.
double analytic_velocity(ModelKind model, const AnglePair& angles);

/// Eigenbasis of P: `up` for +omega, `down` for -omega. When |p2| falls
/// below threshold P is already diagonal and the standard basis is returned
/// (ordered so +omega comes first); when omega itself vanishes the basis is
/// meaningless and velocity_zero is set.
struct DiagonalBasis {
  std::array<cplx, 2> up{cplx(1.0), cplx(0.0)};
  std::array<cplx, 2> down{cplx(0.0), cplx(1.0)};
  bool degenerate = false;
  bool velocity_zero = false;
};

DiagonalBasis diagonalizing_basis(double p1, double p2);

struct ContinuumParams {
  ModelKind model = ModelKind::FibCoin;
  AnglePair angles;
  double p1 = 0.0;
  double p2 = 0.0;
  double omega = 0.0;
  double v = 0.0;
  DiagonalBasis basis;
};

ContinuumParams continuum_params(ModelKind model, const AnglePair& angles);

/// Exact solution of the transport equation at physical time t: the field is
/// decomposed in the diagonal basis, the up-component carried to +x and the
/// down-component to -x by v*t, and recomposed. Integer site shifts are
/// rolled exactly; fractional ones use a spectral phase shift.
SpinorField dirac_reference(const SpinorField& initial, const ContinuumParams& params, double t);

/// Fixed gamma-matrix identities behind the covariant rewrite
/// i (g0 dt + g1 dx~) Psi = 0 with g0 = sigma_x, g1 = -i sigma_y and
/// x~ = x / v: Clifford relations plus g0 g1 = sigma_z. Skipped when v is
/// too small to rescale.
struct CovariantReport {
  bool skipped = false;
  double max_residual = 0.0;
  bool pass = false;
};

CovariantReport covariant_check(const ContinuumParams& params);

}  // namespace fdtqw
