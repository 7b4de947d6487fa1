#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fdtqw/core_types.hpp"

namespace fdtqw {

/// One trajectory: snapshots of the field at a stride of elementary steps.
/// `steps` counts translations, which for FibStep is the walk's clock.
struct WalkRun {
  WalkModel model;
  int n = 0;
  long steps = 0;
  std::vector<std::pair<long, SpinorField>> snapshots;
  std::string initial_desc;

  const SpinorField& final_state() const { return snapshots.back().second; }
};

/// Coin, then chiral shift.
SpinorField step(const SpinorField& field, const CoinMatrix& coin);

/// Periodic block of coins realizing the model's word; the coin of
/// elementary step j is block[j % block.size()].
std::vector<CoinMatrix> coin_block(const WalkModel& model);

/// Iterate the walk for `steps` elementary steps, keeping a snapshot every
/// `snapshot_stride` steps (plus the initial and final states).
WalkRun run(const WalkModel& model, const SpinorField& initial, long steps, long snapshot_stride);

/// Same trajectory advanced six steps at a time with the coefficient table
/// instead of elementary steps. Model must be FibCoin or FibStep.
WalkRun run_stroboscopic(const WalkModel& model, const SpinorField& initial, long six_step_count);

}  // namespace fdtqw
