#include "fdtqw/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdtqw {

namespace {

double reduce_angle(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("angle must be finite");
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

AnglePair::AnglePair(double a, double b) : alpha(reduce_angle(a)), beta(reduce_angle(b)) {}

double CoinMatrix::unitarity_defect() const {
  // rows of C^dag C - I
  const cplx g00 = std::conj(c00) * c00 + std::conj(c10) * c10 - 1.0;
  const cplx g01 = std::conj(c00) * c01 + std::conj(c10) * c11;
  const cplx g10 = std::conj(c01) * c00 + std::conj(c11) * c10;
  const cplx g11 = std::conj(c01) * c01 + std::conj(c11) * c11 - 1.0;
  return std::max({std::abs(g00), std::abs(g01), std::abs(g10), std::abs(g11)});
}

double CoinMatrix::max_abs_diff(const CoinMatrix& o) const {
  return std::max({std::abs(c00 - o.c00), std::abs(c01 - o.c01), std::abs(c10 - o.c10),
                   std::abs(c11 - o.c11)});
}

CoinMatrix make_hadamard_coin(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {cplx(c), cplx(s), cplx(s), cplx(-c)};
}

CoinMatrix make_rotation_coin(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {cplx(c), cplx(-s), cplx(s), cplx(c)};
}

CoinMatrix coin_multiply(const CoinMatrix& a, const CoinMatrix& b) {
  return {a.c00 * b.c00 + a.c01 * b.c10, a.c00 * b.c01 + a.c01 * b.c11,
          a.c10 * b.c00 + a.c11 * b.c10, a.c10 * b.c01 + a.c11 * b.c11};
}

CoinMatrix coin_identity() { return {cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}; }

SpinorField::SpinorField(int n, double dx_in) {
  if (n < 2) throw std::invalid_argument("lattice needs at least 2 sites");
  u.assign(n, cplx(0.0));
  d.assign(n, cplx(0.0));
  dx = dx_in > 0.0 ? dx_in : kTwoPi / n;
}

double SpinorField::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : u) s += std::norm(a);
  for (const cplx& a : d) s += std::norm(a);
  return s;
}

void SpinorField::normalize() {
  const double n2 = norm_sq();
  if (n2 <= 0.0) throw std::domain_error("cannot normalize a zero field");
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& a : u) a *= inv;
  for (cplx& a : d) a *= inv;
}

SpinorField SpinorField::delta(int n, int site, cplx up, cplx down, double dx_in) {
  SpinorField f(n, dx_in);
  if (site < 0 || site >= n) throw std::invalid_argument("delta site out of range");
  f.u[site] = up;
  f.d[site] = down;
  f.normalize();
  return f;
}

SpinorField SpinorField::gaussian(int n, int center, double width_sites, cplx up, cplx down,
                                  double dx_in) {
  if (width_sites <= 0.0) throw std::invalid_argument("gaussian width must be positive");
  SpinorField f(n, dx_in);
  for (int m = 0; m < n; ++m) {
    // distance on the ring, so the envelope is periodic-consistent
    double r = std::abs(m - center);
    r = std::min(r, n - r);
    const double a = std::exp(-r * r / (2.0 * width_sites * width_sites));
    f.u[m] = a * up;
    f.d[m] = a * down;
  }
  f.normalize();
  return f;
}

void apply_coin(SpinorField& field, const CoinMatrix& coin) {
  const int n = field.size();
  for (int m = 0; m < n; ++m) {
    const cplx uu = field.u[m], dd = field.d[m];
    field.u[m] = coin.c00 * uu + coin.c01 * dd;
    field.d[m] = coin.c10 * uu + coin.c11 * dd;
  }
}

void apply_translation(SpinorField& field) {
  std::rotate(field.u.begin(), field.u.end() - 1, field.u.end());
  std::rotate(field.d.begin(), field.d.begin() + 1, field.d.end());
}

void apply_inverse_translation(SpinorField& field) {
  std::rotate(field.u.begin(), field.u.begin() + 1, field.u.end());
  std::rotate(field.d.begin(), field.d.end() - 1, field.d.end());
}

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Standard: return "standard";
    case ModelKind::FibCoin: return "fib-coin";
    case ModelKind::FibStep: return "fib-step";
  }
  return "?";
}

}  // namespace fdtqw
