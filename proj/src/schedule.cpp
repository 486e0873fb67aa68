// SPDX-License-Identifier: Apache-2.0
#include "rrpo/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace rrpo {

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "linear") return ScheduleKind::linear;
  if (name == "constant") return ScheduleKind::constant;
  throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::linear ? "linear" : "constant";
}

static void check_replay_args(int replay_index, int replay_count) {
  if (replay_count < 1) throw std::invalid_argument("replay count L must be >= 1");
  if (replay_index < 1 || replay_index > replay_count) {
    throw std::invalid_argument("replay index must be in [1, L]");
  }
}

double adjust_rollout_ratio(double eps_init, int replay_index, int replay_count) {
  check_replay_args(replay_index, replay_count);
  // (2L - l) / (2L) rounds once, so the L=3 points land exactly on 5/6, 2/3, 1/2.
  const double frac = static_cast<double>(2 * replay_count - replay_index) /
                      static_cast<double>(2 * replay_count);
  return eps_init * frac;
}

double adjust_sft_ratio(double lambda_init, int replay_index, int replay_count) {
  check_replay_args(replay_index, replay_count);
  const double raw = lambda_init + static_cast<double>(replay_index) /
                                       static_cast<double>(2 * replay_count);
  return std::clamp(raw, 0.0, 1.0);
}

void ScheduleState::advance_to(int new_replay_index) {
  check_replay_args(new_replay_index, replay_count);
  replay_index = new_replay_index;
  eps = eps_kind == ScheduleKind::linear
            ? adjust_rollout_ratio(eps_init, replay_index, replay_count)
            : eps_init;
  lambda = lambda_kind == ScheduleKind::linear
               ? adjust_sft_ratio(lambda_init, replay_index, replay_count)
               : lambda_init;
}

}  // namespace rrpo
