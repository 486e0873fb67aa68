// SPDX-License-Identifier: Apache-2.0
#include "rrpo/reward.hpp"

#include <algorithm>
#include <stdexcept>

namespace rrpo {

RewardVerifier make_verifier(TaskKind task, bool partial_credit) {
  RewardVerifier v;
  v.task = task;
  v.partial_credit = partial_credit;
  v.vocab = make_task_vocab(task);
  return v;
}

namespace {

bool is_digit_token(const Vocab& vocab, TokenId t) {
  return t >= 0 && t < vocab.size() && vocab.symbols[t].size() == 1 &&
         vocab.symbols[t][0] >= '0' && vocab.symbols[t][0] <= '9';
}

int digit_value(const Vocab& vocab, TokenId t) { return vocab.symbols[t][0] - '0'; }

bool is_letter_token(const Vocab& vocab, TokenId t) {
  return t >= 0 && t < vocab.size() && vocab.symbols[t].size() == 1 &&
         vocab.symbols[t][0] >= 'a' && vocab.symbols[t][0] <= 'h';
}

// "a+b=" with decimal operands; throws on anything else.
void parse_mod_add_prompt(const Vocab& vocab, const TokenSeq& prompt, long& a, long& b) {
  const TokenId plus = vocab.id_of('+');
  const TokenId equals = vocab.id_of('=');
  std::size_t i = 0;
  auto read_number = [&](long& out) {
    bool any = false;
    out = 0;
    while (i < prompt.size() && is_digit_token(vocab, prompt[i])) {
      out = out * 10 + digit_value(vocab, prompt[i]);
      ++i;
      any = true;
    }
    if (!any) throw std::invalid_argument("mod_add prompt: expected digits");
  };
  read_number(a);
  if (i >= prompt.size() || prompt[i] != plus) {
    throw std::invalid_argument("mod_add prompt: expected '+'");
  }
  ++i;
  read_number(b);
  if (i + 1 != prompt.size() || prompt[i] != equals) {
    throw std::invalid_argument("mod_add prompt: expected trailing '='");
  }
}

// Letters before the trailing separator; throws on anything else.
TokenSeq parse_letters_prompt(const Vocab& vocab, const TokenSeq& prompt) {
  if (prompt.empty() || prompt.back() != vocab.sep_id) {
    throw std::invalid_argument("letters prompt: expected trailing separator");
  }
  TokenSeq letters(prompt.begin(), prompt.end() - 1);
  for (TokenId t : letters) {
    if (!is_letter_token(vocab, t)) throw std::invalid_argument("letters prompt: bad symbol");
  }
  return letters;
}

// Response body (tokens before eos) if well-formed under `accept`, else nullopt.
template <typename Pred>
bool well_formed_body(const Vocab& vocab, const TokenSeq& response, Pred accept, TokenSeq& body) {
  if (response.empty() || response.back() != vocab.eos_id) return false;
  body.assign(response.begin(), response.end() - 1);
  return std::all_of(body.begin(), body.end(), accept);
}

}  // namespace

TokenSeq RewardVerifier::expected_answer(const TokenSeq& prompt) const {
  TokenSeq out;
  if (task == TaskKind::mod_add) {
    long a = 0, b = 0;
    parse_mod_add_prompt(vocab, prompt, a, b);
    out.push_back(vocab.id_of(static_cast<char>('0' + (a + b) % 10)));
  } else {
    TokenSeq letters = parse_letters_prompt(vocab, prompt);
    if (task == TaskKind::reverse) {
      std::reverse(letters.begin(), letters.end());
    } else {
      std::sort(letters.begin(), letters.end());
    }
    out = std::move(letters);
  }
  out.push_back(vocab.eos_id);
  return out;
}

double RewardVerifier::score(const TokenSeq& prompt, const TokenSeq& response) const {
  const TokenSeq expected = expected_answer(prompt);
  if (response == expected) return 1.0;

  if (task == TaskKind::mod_add) {
    TokenSeq body;
    const bool well_formed =
        well_formed_body(vocab, response, [this](TokenId t) { return is_digit_token(vocab, t); },
                         body) &&
        body.size() == 1;
    return (well_formed && partial_credit) ? 0.5 : 0.0;
  }

  TokenSeq body;
  const bool well_formed = well_formed_body(
      vocab, response, [this](TokenId t) { return is_letter_token(vocab, t); }, body);
  if (!well_formed || !partial_credit) return 0.0;
  const TokenSeq expected_body(expected.begin(), expected.end() - 1);
  const std::size_t overlap = std::min(body.size(), expected_body.size());
  std::size_t matches = 0;
  for (std::size_t i = 0; i < overlap; ++i) {
    if (body[i] == expected_body[i]) ++matches;
  }
  const std::size_t denom = std::max(body.size(), expected_body.size());
  return denom == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(denom);
}

PairSelection select_pair(std::span<const ScoredResponse> scored) {
  if (scored.size() < 2) throw std::invalid_argument("select_pair needs at least 2 responses");
  PairSelection sel;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].score > scored[sel.winner_index].score) sel.winner_index = static_cast<int>(i);
    if (scored[i].score < scored[sel.loser_index].score) sel.loser_index = static_cast<int>(i);
  }
  sel.degenerate = scored[sel.winner_index].response == scored[sel.loser_index].response;
  return sel;
}

double pass_at_1(const PolicyParams& params, const RewardVerifier& verifier,
                 std::span<const EvalItem> eval_set, int max_len) {
  if (eval_set.empty()) throw std::invalid_argument("eval set must be non-empty");
  std::size_t correct = 0;
  for (const EvalItem& item : eval_set) {
    const TokenSeq decoded = greedy_decode(params, item.prompt, max_len, verifier.vocab.eos_id);
    if (verifier.score(item.prompt, decoded) == 1.0) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(eval_set.size());
}

}  // namespace rrpo
