// SPDX-License-Identifier: Apache-2.0
#include "rrpo/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rrpo/rng.hpp"

namespace rrpo {

using nlohmann::json;

namespace {

constexpr int kModAddMaxA = 99;  // left operand range; right operand is a digit
constexpr int kLettersMin = 2, kLettersMax = 4;
constexpr int kAlphabet = 8;  // 'a'..'h'

// A well-formed answer that is guaranteed wrong: swap the first two symbols
// when that changes the string, otherwise bump the last symbol.
std::string wrong_variant(TaskKind task, const std::string& answer) {
  std::string out = answer;
  if (task == TaskKind::mod_add) {
    out[0] = static_cast<char>('0' + (answer[0] - '0' + 1) % 10);
    return out;
  }
  if (out.size() >= 2 && out[0] != out[1]) {
    std::swap(out[0], out[1]);
    return out;
  }
  out.back() = static_cast<char>('a' + (out.back() - 'a' + 1) % kAlphabet);
  return out;
}

std::string make_answer(TaskKind task, const std::string& body) {
  switch (task) {
    case TaskKind::mod_add: return body;  // computed by the caller
    case TaskKind::reverse: {
      std::string s(body.rbegin(), body.rend());
      return s;
    }
    case TaskKind::sort: {
      std::string s = body;
      std::sort(s.begin(), s.end());
      return s;
    }
  }
  return {};
}

long prompt_space(TaskKind task) {
  if (task == TaskKind::mod_add) return static_cast<long>(kModAddMaxA + 1) * 10;
  long total = 0, pow = 1;
  for (int len = 1; len <= kLettersMax; ++len) {
    pow *= kAlphabet;
    if (len >= kLettersMin) total += pow;
  }
  return total;
}

}  // namespace

std::vector<DatasetRecord> generate_dataset(TaskKind task, int size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("dataset size must be >= 1");
  if (size > prompt_space(task)) {
    throw std::invalid_argument("dataset size exceeds the task's distinct prompt space (" +
                                std::to_string(prompt_space(task)) + ")");
  }
  RngStream rng = derive_stream(seed, StreamPurpose::dataset_gen, {});
  std::vector<DatasetRecord> out;
  out.reserve(size);
  std::unordered_set<std::string> seen;
  while (static_cast<int>(out.size()) < size) {
    DatasetRecord rec;
    if (task == TaskKind::mod_add) {
      const long a = static_cast<long>(rng.next_double() * (kModAddMaxA + 1));
      const long b = static_cast<long>(rng.next_double() * 10);
      rec.prompt = std::to_string(a) + "+" + std::to_string(b) + "=";
      rec.answer = std::string(1, static_cast<char>('0' + (a + b) % 10));
    } else {
      const int len = kLettersMin + static_cast<int>(rng.next_double() *
                                                     (kLettersMax - kLettersMin + 1));
      std::string body;
      for (int i = 0; i < len; ++i) {
        body += static_cast<char>('a' + static_cast<int>(rng.next_double() * kAlphabet));
      }
      rec.prompt = body + "|";
      rec.answer = make_answer(task, body);
    }
    if (!seen.insert(rec.prompt).second) continue;
    rec.rejected = wrong_variant(task, rec.answer);
    out.push_back(std::move(rec));
  }
  return out;
}

void save_jsonl(const std::filesystem::path& path, std::span<const DatasetRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open dataset for writing: " + path.string());
  for (const DatasetRecord& rec : records) {
    json j;
    j["prompt"] = rec.prompt;
    j["answer"] = rec.answer;
    if (rec.rejected) j["rejected"] = *rec.rejected;
    out << j.dump() << '\n';
  }
}

std::vector<DatasetRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());
  std::vector<DatasetRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) + ": invalid JSON");
    }
    DatasetRecord rec;
    rec.prompt = j.at("prompt").get<std::string>();
    rec.answer = j.at("answer").get<std::string>();
    if (j.contains("rejected")) rec.rejected = j.at("rejected").get<std::string>();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace rrpo
