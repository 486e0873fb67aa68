// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "rrpo/policy.hpp"
#include "rrpo/vocab.hpp"

namespace rrpo {

// Deterministic verifiable scorer r(x, y) in [0, 1].
//
// Exact match of the task answer scores 1.0. With partial_credit a
// well-formed wrong response earns a graded score: 0.5 for mod_add, the
// position-match fraction for reverse/sort. Anything malformed scores 0.0.
struct RewardVerifier {
  TaskKind task = TaskKind::mod_add;
  bool partial_credit = true;
  Vocab vocab;

  double score(const TokenSeq& prompt, const TokenSeq& response) const;

  // Ground-truth answer tokens (with eos) recomputed from the prompt.
  TokenSeq expected_answer(const TokenSeq& prompt) const;
};

RewardVerifier make_verifier(TaskKind task, bool partial_credit = true);

struct ScoredResponse {
  TokenSeq response;
  double score = 0.0;
  int index = 0;
};

struct PairSelection {
  int winner_index = 0;
  int loser_index = 0;
  bool degenerate = false;  // winner and loser token-identical
};

// argmax / argmin of score; ties break toward the lowest index on both ends.
PairSelection select_pair(std::span<const ScoredResponse> scored);

struct EvalItem {
  TokenSeq prompt;
  TokenSeq answer;  // with eos
};

// Fraction of prompts whose greedy decode scores exactly 1.0.
double pass_at_1(const PolicyParams& params, const RewardVerifier& verifier,
                 std::span<const EvalItem> eval_set, int max_len);

}  // namespace rrpo
