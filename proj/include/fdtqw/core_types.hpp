#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace fdtqw {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Coin angle pair (alpha, beta), reduced to [0, 2*pi) on construction.
struct AnglePair {
  double alpha = 0.0;
  double beta = 0.0;

  AnglePair() = default;
  AnglePair(double a, double b);

  AnglePair negated() const { return AnglePair(-alpha, -beta); }
};

/// 2x2 complex matrix, row-major. All coins used here are unitary; the
/// generalized Hadamard coins are additionally involutory reflections
/// (det -1), while the Fibonacci coin sequence also produces proper
/// rotations (det +1).
struct CoinMatrix {
  cplx c00{}, c01{}, c10{}, c11{};

  cplx det() const { return c00 * c11 - c01 * c10; }
  /// Largest entry of |C^dag C - I|.
  double unitarity_defect() const;
  double max_abs_diff(const CoinMatrix& other) const;
};

/// [[cos t, sin t], [sin t, -cos t]]
CoinMatrix make_hadamard_coin(double theta);
/// [[cos t, -sin t], [sin t, cos t]]
CoinMatrix make_rotation_coin(double phi);
CoinMatrix coin_multiply(const CoinMatrix& a, const CoinMatrix& b);
CoinMatrix coin_identity();

/// Two-component wavefunction on a periodic lattice of n sites. u transports
/// toward +x, d toward -x under the chiral shift.
struct SpinorField {
  std::vector<cplx> u;
  std::vector<cplx> d;
  double dx = 0.0;

  SpinorField() = default;
  /// Zero field of n sites; spacing defaults to 2*pi/n when dx <= 0.
  explicit SpinorField(int n, double dx_in = 0.0);

  int size() const { return static_cast<int>(u.size()); }
  double norm_sq() const;
  void normalize();

  /// Point source at `site` with spin (up, down); normalized.
  static SpinorField delta(int n, int site, cplx up, cplx down, double dx_in = 0.0);
  /// Gaussian envelope exp(-(m-center)^2 / (2 w^2)) on the amplitude, spin
  /// (up, down) at every site; normalized. The density then has standard
  /// deviation w/sqrt(2).
  static SpinorField gaussian(int n, int center, double width_sites, cplx up, cplx down,
                              double dx_in = 0.0);
};

/// Per-site spin rotation: (u, d) <- coin * (u, d).
void apply_coin(SpinorField& field, const CoinMatrix& coin);
/// Chiral shift: u[m] <- u[m-1], d[m] <- d[m+1] (periodic).
void apply_translation(SpinorField& field);
/// Exact inverse of apply_translation.
void apply_inverse_translation(SpinorField& field);

enum class ModelKind { Standard, FibCoin, FibStep };

const char* model_name(ModelKind kind);

/// Walk family plus its angles. Standard(theta) keeps a fixed coin; FibCoin
/// follows the period-6 coin recursion; FibStep follows the period-3 coin
/// word of the Fibonacci step recursion.
struct WalkModel {
  ModelKind kind = ModelKind::Standard;
  AnglePair angles;

  static WalkModel standard(double theta) { return {ModelKind::Standard, AnglePair(theta, theta)}; }
  static WalkModel fib_coin(const AnglePair& a) { return {ModelKind::FibCoin, a}; }
  static WalkModel fib_step(const AnglePair& a) { return {ModelKind::FibStep, a}; }
};

}  // namespace fdtqw
