// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace rrpo {

enum class ScheduleKind { linear, constant };

ScheduleKind parse_schedule_kind(std::string_view name);
std::string to_string(ScheduleKind kind);

// Rollout-mix ratio for replay `replay_index` of `replay_count`:
//   eps_init * (1 - l/(2L)), nonincreasing in l.
double adjust_rollout_ratio(double eps_init, int replay_index, int replay_count);

// SFT mix weight for the same replay:
//   clamp(lambda_init + l/(2L), 0, 1), nondecreasing in l.
double adjust_sft_ratio(double lambda_init, int replay_index, int replay_count);

// Per-iteration schedule over the replay loop. The two ratios can be pinned
// to their initial values independently (constant kind), which the component
// ablations use.
struct ScheduleState {
  int replay_index = 1;  // l, 1-based
  int replay_count = 1;  // L
  double eps_init = 1.0;
  double lambda_init = 0.0;
  double eps = 1.0;
  double lambda = 0.0;
  ScheduleKind eps_kind = ScheduleKind::linear;
  ScheduleKind lambda_kind = ScheduleKind::linear;

  // Recomputes eps/lambda for the given replay index (depends only on l,
  // so values restart from the top at each new outer iteration).
  void advance_to(int new_replay_index);
};

}  // namespace rrpo
