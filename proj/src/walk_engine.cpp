#include "fdtqw/walk_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "fdtqw/coin_sequences.hpp"
#include "fdtqw/stencil.hpp"

namespace fdtqw {

namespace {

void check_normalized(const SpinorField& field) {
  if (std::abs(field.norm_sq() - 1.0) > 1e-8)
    throw std::invalid_argument("initial field must be normalized");
}

}  // namespace

SpinorField step(const SpinorField& field, const CoinMatrix& coin) {
  SpinorField out = field;
  apply_coin(out, coin);
  apply_translation(out);
  return out;
}

std::vector<CoinMatrix> coin_block(const WalkModel& model) {
  switch (model.kind) {
    case ModelKind::Standard: return {make_hadamard_coin(model.angles.alpha)};
    case ModelKind::FibCoin: return fib_coin_sequence(model.angles, 6).coins;
    case ModelKind::FibStep: return fib_step_coin_word(model.angles, 3).coins;
  }
  throw std::logic_error("unknown model kind");
}

WalkRun run(const WalkModel& model, const SpinorField& initial, long steps, long snapshot_stride) {
  if (steps < 1) throw std::invalid_argument("step count must be >= 1");
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
  check_normalized(initial);

  const std::vector<CoinMatrix> block = coin_block(model);
  const long p = static_cast<long>(block.size());

  WalkRun result;
  result.model = model;
  result.n = initial.size();
  result.steps = steps;
  result.snapshots.emplace_back(0, initial);

  SpinorField field = initial;
  for (long j = 1; j <= steps; ++j) {
    apply_coin(field, block[(j - 1) % p]);
    apply_translation(field);
    if (j % snapshot_stride == 0 || j == steps) result.snapshots.emplace_back(j, field);
  }
  return result;
}

WalkRun run_stroboscopic(const WalkModel& model, const SpinorField& initial, long six_step_count) {
  if (model.kind != ModelKind::FibCoin && model.kind != ModelKind::FibStep)
    throw std::invalid_argument("stroboscopic evolution exists for fib-coin and fib-step only");
  if (six_step_count < 0) throw std::invalid_argument("block count must be >= 0");
  check_normalized(initial);

  const StencilCoefficients coeffs = closed_form_coefficients(model.kind, model.angles);

  WalkRun result;
  result.model = model;
  result.n = initial.size();
  result.steps = 6 * six_step_count;
  result.snapshots.emplace_back(0, initial);

  SpinorField field = initial;
  for (long i = 1; i <= six_step_count; ++i) {
    field = apply_stencil(field, coeffs);
    result.snapshots.emplace_back(6 * i, field);
  }
  return result;
}

}  // namespace fdtqw
