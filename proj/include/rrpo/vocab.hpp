// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rrpo {

using TokenId = int;
using TokenSeq = std::vector<TokenId>;

// Reserved token layout shared by every task vocabulary.
inline constexpr TokenId kBosId = 0;
inline constexpr TokenId kEosId = 1;
inline constexpr TokenId kSepId = 2;

enum class TaskKind { mod_add, reverse, sort };

TaskKind parse_task_kind(std::string_view name);
std::string to_string(TaskKind task);

// Token alphabet for one task. Ids 0..2 are the specials above; task symbols
// follow, one printable character each. The separator renders as '|'.
struct Vocab {
  std::vector<std::string> symbols;
  TokenId bos_id = kBosId;
  TokenId eos_id = kEosId;
  TokenId sep_id = kSepId;

  int size() const { return static_cast<int>(symbols.size()); }

  // Throws std::invalid_argument on a character outside the alphabet.
  TokenId id_of(char c) const;
  TokenSeq encode(std::string_view text) const;

  // bos/eos are dropped; sep renders as '|'.
  std::string decode(const TokenSeq& tokens) const;
};

Vocab make_task_vocab(TaskKind task);

}  // namespace rrpo
