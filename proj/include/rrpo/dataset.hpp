// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrpo/vocab.hpp"

namespace rrpo {

// One preference-dataset record. `rejected`, when present, is a well-formed
// wrong answer usable as the dataset-provided loser of an initial pair.
struct DatasetRecord {
  std::string prompt;
  std::string answer;
  std::optional<std::string> rejected;

  bool operator==(const DatasetRecord&) const = default;
};

// Deterministic per seed; prompts unique; answers correct by construction
// (they score 1.0 under the task verifier). Throws when `size` exceeds the
// task's distinct prompt space.
std::vector<DatasetRecord> generate_dataset(TaskKind task, int size, std::uint64_t seed);

// JSON Lines, UTF-8, keys prompt / answer / rejected (optional).
void save_jsonl(const std::filesystem::path& path, std::span<const DatasetRecord> records);
std::vector<DatasetRecord> load_jsonl(const std::filesystem::path& path);

}  // namespace rrpo
