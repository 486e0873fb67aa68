// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>

#include "rrpo/policy.hpp"

namespace rrpo {

// Checkpoint schema:
//   {"dims": [V, d, d_h, n],
//    "groups": {"embedding": [...], "hidden_w": [...], "hidden_b": [...],
//               "out_w": [...], "out_b": [...]}}
// Arrays are row-major doubles; serialization uses shortest round-trip
// decimal so load(save(p)) is bit-identical to p.

nlohmann::json policy_to_json(const PolicyParams& params);
PolicyParams policy_from_json(const nlohmann::json& j);

void save_policy(const std::filesystem::path& path, const PolicyParams& params);
PolicyParams load_policy(const std::filesystem::path& path);

}  // namespace rrpo
