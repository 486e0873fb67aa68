// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rrpo/rng.hpp"
#include "rrpo/vocab.hpp"

namespace rrpo {

// Neural n-gram token policy: the last `context` tokens are embedded,
// concatenated, passed through one tanh layer and projected to vocab logits.
//
//   logits = out_w * tanh(hidden_w * concat(E[c_1..c_n]) + hidden_b) + out_b
//
// Small enough for exact analytic gradients, but it keeps the three named
// parameter groups (embedding / hidden / output) that the reset strategy
// interpolates selectively.

struct ModelDims {
  int vocab = 0;       // V
  int embed_dim = 0;   // d
  int hidden_dim = 0;  // d_h
  int context = 0;     // n, window length

  bool operator==(const ModelDims&) const = default;
};

enum class ParamGroup { embedding, hidden, output };

std::string to_string(ParamGroup g);

struct PolicyParams {
  ModelDims dims;
  std::vector<double> embedding;  // vocab x embed_dim, row-major
  std::vector<double> hidden_w;   // hidden_dim x (context*embed_dim), row-major
  std::vector<double> hidden_b;   // hidden_dim
  std::vector<double> out_w;      // vocab x hidden_dim, row-major
  std::vector<double> out_b;      // vocab

  static PolicyParams zeros(const ModelDims& dims);

  std::size_t total_size() const;

  // Tensors in canonical order with their owning group; lets optimizer /
  // reset / serialization code run one generic elementwise pass.
  static constexpr int kTensorCount = 5;
  static constexpr std::array<ParamGroup, kTensorCount> kTensorGroups = {
      ParamGroup::embedding, ParamGroup::hidden, ParamGroup::hidden,
      ParamGroup::output, ParamGroup::output};
  static constexpr std::array<const char*, kTensorCount> kTensorNames = {
      "embedding", "hidden_w", "hidden_b", "out_w", "out_b"};

  std::array<std::vector<double>*, kTensorCount> tensors();
  std::array<const std::vector<double>*, kTensorCount> tensors() const;

  bool same_shape(const PolicyParams& other) const;
  bool bit_identical(const PolicyParams& other) const;
};

// Uniform init in [-s, +s] with s = 1/sqrt(fan_in) per group (embedding
// fan_in = embed_dim; hidden fan_in = context*embed_dim; output fan_in =
// hidden_dim). Deterministic per seed.
PolicyParams init_params(std::uint64_t seed, const ModelDims& dims);

// Logits over the vocab for the next token. The context is windowed to the
// last `dims.context` tokens and left-padded with bos when shorter.
// Throws std::invalid_argument on an empty context or out-of-range token id.
std::vector<double> forward_logits(const PolicyParams& params, const TokenSeq& context);

// Sum over response positions of log softmax(logits)[token]. Always <= 0.
// Throws std::invalid_argument on an empty response.
double sequence_logprob(const PolicyParams& params, const TokenSeq& prompt,
                        const TokenSeq& response);

struct SampleOptions {
  int max_len = 8;
  double temperature = 1.0;
  bool greedy = false;  // argmax decode; favoured over temperature=0
  TokenId eos_id = kEosId;
};

// One autoregressive response; stops at eos (inclusive) or max_len.
TokenSeq sample_response(const PolicyParams& params, const TokenSeq& prompt,
                         const SampleOptions& opts, RngStream& rng);

// K responses drawn sequentially from the same stream. K >= 2.
std::vector<TokenSeq> sample_responses(const PolicyParams& params, const TokenSeq& prompt,
                                       int k, const SampleOptions& opts, RngStream& rng);

TokenSeq greedy_decode(const PolicyParams& params, const TokenSeq& prompt,
                       int max_len, TokenId eos_id = kEosId);

// Accumulates weight * d log pi(response|prompt) / d params into grad.
// Exact reverse-mode through the n-gram network; grad must share shapes.
void accumulate_logprob_grad(const PolicyParams& params, const TokenSeq& prompt,
                             const TokenSeq& response, double weight, PolicyParams& grad);

// ---------------------------------------------------------------------------
// AdamW with linear warmup + cosine decay to zero.

struct OptimizerState {
  PolicyParams first_moment;
  PolicyParams second_moment;
  long step_count = 0;
  double lr_base = 1e-2;
  double warmup_frac = 0.1;
  long total_steps = 1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;

  static OptimizerState create(const ModelDims& dims, double lr_base, long total_steps,
                               double warmup_frac = 0.1, double weight_decay = 0.01);
};

// Learning rate the next adamw_step call will apply. Warmup ramps as
// lr_base*(step+1)/warmup_steps so the first step is nonzero, then cosine
// decays to 0 at total_steps.
double effective_lr(const OptimizerState& opt);

void adamw_step(PolicyParams& params, const PolicyParams& grads, OptimizerState& opt);

// Zero the Adam moments of the given tensors (used when a reset is configured
// to also clear optimizer state for the reset groups).
void zero_moments_for_groups(OptimizerState& opt, std::span<const ParamGroup> groups);

}  // namespace rrpo
