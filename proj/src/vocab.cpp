// SPDX-License-Identifier: Apache-2.0
#include "rrpo/vocab.hpp"

#include <stdexcept>

namespace rrpo {

TaskKind parse_task_kind(std::string_view name) {
  if (name == "mod_add") return TaskKind::mod_add;
  if (name == "reverse") return TaskKind::reverse;
  if (name == "sort") return TaskKind::sort;
  throw std::invalid_argument("unknown task kind: " + std::string(name));
}

std::string to_string(TaskKind task) {
  switch (task) {
    case TaskKind::mod_add: return "mod_add";
    case TaskKind::reverse: return "reverse";
    case TaskKind::sort: return "sort";
  }
  return "?";
}

TokenId Vocab::id_of(char c) const {
  for (int i = 0; i < size(); ++i) {
    if (symbols[i].size() == 1 && symbols[i][0] == c) return i;
  }
  throw std::invalid_argument(std::string("character not in task vocab: '") + c + "'");
}

TokenSeq Vocab::encode(std::string_view text) const {
  TokenSeq out;
  out.reserve(text.size());
  for (char c : text) out.push_back(id_of(c));
  return out;
}

std::string Vocab::decode(const TokenSeq& tokens) const {
  std::string out;
  for (TokenId t : tokens) {
    if (t < 0 || t >= size()) throw std::invalid_argument("token id out of range in decode");
    if (t == bos_id || t == eos_id) continue;
    out += symbols[t];
  }
  return out;
}

Vocab make_task_vocab(TaskKind task) {
  Vocab v;
  v.symbols = {"<bos>", "<eos>", "|"};
  switch (task) {
    case TaskKind::mod_add:
      for (char c = '0'; c <= '9'; ++c) v.symbols.emplace_back(1, c);
      v.symbols.emplace_back("+");
      v.symbols.emplace_back("=");
      break;
    case TaskKind::reverse:
    case TaskKind::sort:
      for (char c = 'a'; c <= 'h'; ++c) v.symbols.emplace_back(1, c);
      break;
  }
  return v;
}

}  // namespace rrpo
