// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <string>

#include "rrpo/policy.hpp"
#include "rrpo/transition.hpp"

namespace rrpo {

// Training objectives over a batch of TransitionTriple. All are batch means
// with exact analytic gradients. Notation below: lw/ll are policy sequence
// logprobs of winner/loser, rw/rl the same under the frozen reference,
// |y| a response length in tokens, sp(z) = log(1+e^z) the softplus.
//
//   sft    mean( -lw )
//   dpo    mean( sp(-z) ),  z = beta*((lw-rw) - (ll-rl))
//   simpo  mean( sp(-z) ),  z = beta*(lw/|yw| - ll/|yl|) - gamma   (reference-free)
//   ipo    mean( (h - 1/(2*tau))^2 ),  h = (lw-rw) - (ll-rl),  tau = gamma
//   kto    mean over the 2B desirable/undesirable halves of
//          gamma*(1 - sigmoid(beta*(lw-rw)))  and  gamma*(1 - sigmoid(-beta*(ll-rl)))
//          (paired form with the reference point fixed at 0)
//   rdpo   mean( sp(-z) ),  z = beta*((lw-rw) - (ll-rl)) - gamma*(|yw| - |yl|)
//          (length-regularized dpo)
//   hybrid lambda*sft + (1-lambda)*<preference loss>

enum class LossKind { sft, dpo, simpo, ipo, kto, rdpo, hybrid };

LossKind parse_loss_kind(std::string_view name);
std::string to_string(LossKind kind);

struct LossSpec {
  LossKind kind = LossKind::dpo;
  double beta = 0.01;
  double gamma = 0.0;
  double lambda = 0.0;                  // hybrid mix weight, in [0, 1]
  LossKind pref_kind = LossKind::dpo;   // inner preference loss when kind == hybrid
};

// Per-method constants from the usual tuning of each objective
// (dpo/kto/rdpo beta=0.01, kto gamma=1.0, ipo tau=0.5, rdpo gamma=0.6,
// simpo beta=2 gamma=0.55).
void apply_default_constants(LossSpec& spec);

struct LossValue {
  double scalar = 0.0;
  std::map<std::string, double> components;
  int degenerate_pairs = 0;
};

LossValue sft_loss(const PolicyParams& policy, std::span<const TransitionTriple> batch);
LossValue dpo_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double beta);
LossValue simpo_loss(const PolicyParams& policy, std::span<const TransitionTriple> batch,
                     double beta, double gamma);
LossValue ipo_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double tau);
LossValue kto_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double beta, double gamma);
LossValue rdpo_loss(const PolicyParams& policy, const PolicyParams& reference,
                    std::span<const TransitionTriple> batch, double beta, double gamma);

// scalar = lambda*sft + (1-lambda)*pref, components recorded.
LossValue hybrid_loss(double lambda, const LossValue& sft, const LossValue& pref);

// Unified evaluation. reference may be null for reference-free kinds
// (sft, simpo). Throws std::invalid_argument on an empty batch.
LossValue eval_loss(const LossSpec& spec, const PolicyParams& policy,
                    const PolicyParams* reference, std::span<const TransitionTriple> batch);

// Value plus exact gradient; grad_out is overwritten (zeros then accumulate).
// Throws a numeric error when the loss is non-finite.
LossValue eval_loss_grad(const LossSpec& spec, const PolicyParams& policy,
                         const PolicyParams* reference, std::span<const TransitionTriple> batch,
                         PolicyParams& grad_out);

// Numerically stable helpers shared with tests.
double stable_softplus(double x);   // log(1 + e^x)
double stable_sigmoid(double x);

}  // namespace rrpo
