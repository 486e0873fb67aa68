// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rrpo/vocab.hpp"

namespace rrpo {

enum class TripleOrigin { rollout, initial };

// One preference record: prompt x with a ranked (winner, loser) response
// pair. `origin` records whether the pair came from current-policy rollouts
// or from the initial data source.
struct TransitionTriple {
  TokenSeq prompt;
  TokenSeq winner;
  TokenSeq loser;
  TripleOrigin origin = TripleOrigin::rollout;
  bool degenerate = false;  // winner == loser token-identical
};

}  // namespace rrpo
