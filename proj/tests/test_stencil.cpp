#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdtqw/coin_sequences.hpp"
#include "fdtqw/stencil.hpp"
#include "fdtqw/walk_engine.hpp"

using namespace fdtqw;

namespace {

SpinorField random_state(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  SpinorField f(n);
  for (int m = 0; m < n; ++m) {
    f.u[m] = cplx(gauss(rng), gauss(rng));
    f.d[m] = cplx(gauss(rng), gauss(rng));
  }
  f.normalize();
  return f;
}

double symbol_unitarity_defect(const std::array<cplx, 4>& s) {
  const cplx g00 = std::conj(s[0]) * s[0] + std::conj(s[2]) * s[2] - 1.0;
  const cplx g01 = std::conj(s[0]) * s[1] + std::conj(s[2]) * s[3];
  const cplx g11 = std::conj(s[1]) * s[1] + std::conj(s[3]) * s[3] - 1.0;
  return std::max({std::abs(g00), std::abs(g01), std::abs(g11)});
}

}  // namespace

TEST_CASE("zero angles give pure transport tables") {
  for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
    const StencilCoefficients t = closed_form_coefficients(model, AnglePair(0.0, 0.0));
    CHECK(t.a(-6) == doctest::Approx(1.0).epsilon(1e-15));
    for (int off : StencilCoefficients::offsets) {
      if (off != -6) CHECK(std::abs(t.a(off)) < 1e-15);
      CHECK(std::abs(t.b(off)) < 1e-15);
    }
  }
}

TEST_CASE("the +6 entries vanish identically") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 50; ++trial) {
    const AnglePair ang(angle(rng), angle(rng));
    for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
      const StencilCoefficients t = closed_form_coefficients(model, ang);
      CHECK(t.a(6) == 0.0);
      CHECK(t.b(6) == 0.0);
    }
  }
}

TEST_CASE("closed form equals the composition oracle") {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const AnglePair ang(angle(rng), angle(rng));
    for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
      worst = std::max(worst, max_table_difference(closed_form_coefficients(model, ang),
                                                   oracle_coefficients(model, ang)));
    }
  }
  CHECK(worst < 1e-10);

  CHECK(max_table_difference(closed_form_coefficients(ModelKind::FibCoin, AnglePair(kPi / 4, kPi / 8)),
                             oracle_coefficients(ModelKind::FibCoin, AnglePair(kPi / 4, kPi / 8))) <
        1e-10);
  CHECK(max_table_difference(closed_form_coefficients(ModelKind::FibStep, AnglePair(kPi / 3, kPi / 6)),
                             oracle_coefficients(ModelKind::FibStep, AnglePair(kPi / 3, kPi / 6))) <
        1e-10);
}

TEST_CASE("stencil application: pure transport draws from offset -6") {
  const StencilCoefficients t = closed_form_coefficients(ModelKind::FibCoin, AnglePair(0.0, 0.0));
  SpinorField f = SpinorField::delta(32, 16, cplx(1.0), cplx(0.0));
  const SpinorField out = apply_stencil(f, t);
  // out_u[m] = a(-6) u[m-6]: the packet lands six sites forward, like six
  // elementary steps of the walk
  CHECK(out.u[22].real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(out.u[16]) < 1e-15);
  CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stencil application equals six elementary steps") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 25; ++trial) {
    const AnglePair ang(angle(rng), angle(rng));
    for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
      const SpinorField f = random_state(64, rng);
      const SpinorField fast = apply_stencil(f, closed_form_coefficients(model, ang));

      SpinorField slow = f;
      const CoinWord word = model == ModelKind::FibCoin ? fib_coin_sequence(ang, 6)
                                                        : fib_step_coin_word(ang, 6);
      for (const CoinMatrix& coin : word.coins) {
        apply_coin(slow, coin);
        apply_translation(slow);
      }
      double diff = 0.0;
      for (int m = 0; m < 64; ++m)
        diff = std::max({diff, std::abs(fast.u[m] - slow.u[m]), std::abs(fast.d[m] - slow.d[m])});
      CHECK(diff < 1e-10);
      CHECK(std::abs(fast.norm_sq() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("zero field maps to zero field") {
  const StencilCoefficients t = closed_form_coefficients(ModelKind::FibStep, AnglePair(0.9, 0.2));
  const SpinorField out = apply_stencil(SpinorField(16), t);
  CHECK(out.norm_sq() == 0.0);
}

TEST_CASE("six-step symbol is unitary at every wavenumber") {
  std::mt19937 rng(34);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const AnglePair ang(angle(rng), angle(rng));
    for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
      const StencilCoefficients t = closed_form_coefficients(model, ang);
      for (int k = 0; k < 64; ++k)
        worst = std::max(worst, symbol_unitarity_defect(symbol_matrix(t, kTwoPi * k / 64)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("offsets sum to the identity symbol at q = 0") {
  std::mt19937 rng(35);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 20; ++trial) {
    const AnglePair ang(angle(rng), angle(rng));
    for (ModelKind model : {ModelKind::FibCoin, ModelKind::FibStep}) {
      const StencilCoefficients t = closed_form_coefficients(model, ang);
      double sum_a = 0.0, sum_b = 0.0;
      for (int off : StencilCoefficients::offsets) {
        sum_a += t.a(off);
        sum_b += t.b(off);
      }
      CHECK(sum_a == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(sum_b) < 1e-12);
    }
  }
}

TEST_CASE("preconditions") {
  const AnglePair ang(0.3, 0.1);
  CHECK_THROWS_AS(closed_form_coefficients(ModelKind::Standard, ang), std::invalid_argument);
  CHECK_THROWS_AS(oracle_coefficients(ModelKind::FibCoin, ang, 15), std::invalid_argument);
  CHECK_THROWS_AS(
      apply_stencil(SpinorField(8), closed_form_coefficients(ModelKind::FibCoin, ang)),
      std::invalid_argument);
  CHECK_THROWS_AS(StencilCoefficients::index_of(3), std::invalid_argument);
  CHECK_THROWS_AS(StencilCoefficients::index_of(8), std::invalid_argument);
}
