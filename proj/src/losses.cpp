// SPDX-License-Identifier: Apache-2.0
#include "rrpo/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace rrpo {

LossKind parse_loss_kind(std::string_view name) {
  if (name == "sft") return LossKind::sft;
  if (name == "dpo") return LossKind::dpo;
  if (name == "simpo") return LossKind::simpo;
  if (name == "ipo") return LossKind::ipo;
  if (name == "kto") return LossKind::kto;
  if (name == "rdpo") return LossKind::rdpo;
  if (name == "hybrid") return LossKind::hybrid;
  throw std::invalid_argument("unknown loss kind: " + std::string(name));
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::sft: return "sft";
    case LossKind::dpo: return "dpo";
    case LossKind::simpo: return "simpo";
    case LossKind::ipo: return "ipo";
    case LossKind::kto: return "kto";
    case LossKind::rdpo: return "rdpo";
    case LossKind::hybrid: return "hybrid";
  }
  return "?";
}

void apply_default_constants(LossSpec& spec) {
  const LossKind k = spec.kind == LossKind::hybrid ? spec.pref_kind : spec.kind;
  switch (k) {
    case LossKind::dpo: spec.beta = 0.01; spec.gamma = 0.0; break;
    case LossKind::kto: spec.beta = 0.01; spec.gamma = 1.0; break;
    case LossKind::ipo: spec.beta = 0.0;  spec.gamma = 0.5; break;
    case LossKind::rdpo: spec.beta = 0.01; spec.gamma = 0.6; break;
    case LossKind::simpo: spec.beta = 2.0; spec.gamma = 0.55; break;
    default: break;
  }
}

double stable_softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

struct PairView {
  double lw = 0.0, ll = 0.0;  // policy logprobs, winner / loser
  double rw = 0.0, rl = 0.0;  // reference logprobs
  std::size_t len_w = 0, len_l = 0;
  bool degenerate = false;
};

// Per-pair loss term and its derivatives w.r.t. the policy logprobs;
// the batch mean and gradient weights are assembled from these.
struct PairTerm {
  double value = 0.0;
  double d_lw = 0.0;
  double d_ll = 0.0;
};

std::vector<PairView> compute_views(const PolicyParams& policy, const PolicyParams* reference,
                                    std::span<const TransitionTriple> batch) {
  std::vector<PairView> views;
  views.reserve(batch.size());
  for (const TransitionTriple& t : batch) {
    PairView v;
    v.lw = sequence_logprob(policy, t.prompt, t.winner);
    v.ll = sequence_logprob(policy, t.prompt, t.loser);
    if (reference != nullptr) {
      v.rw = sequence_logprob(*reference, t.prompt, t.winner);
      v.rl = sequence_logprob(*reference, t.prompt, t.loser);
    }
    v.len_w = t.winner.size();
    v.len_l = t.loser.size();
    v.degenerate = t.winner == t.loser;
    views.push_back(v);
  }
  return views;
}

PairTerm sft_term(const PairView& v) {
  return {-v.lw, -1.0, 0.0};
}

PairTerm dpo_term(const PairView& v, double beta) {
  const double z = beta * ((v.lw - v.rw) - (v.ll - v.rl));
  const double s = stable_sigmoid(-z);
  return {stable_softplus(-z), -beta * s, beta * s};
}

PairTerm simpo_term(const PairView& v, double beta, double gamma) {
  if (v.len_w == 0 || v.len_l == 0) {
    throw std::invalid_argument("simpo: zero-length response");
  }
  const double nw = static_cast<double>(v.len_w);
  const double nl = static_cast<double>(v.len_l);
  const double z = beta * (v.lw / nw - v.ll / nl) - gamma;
  const double s = stable_sigmoid(-z);
  return {stable_softplus(-z), -beta * s / nw, beta * s / nl};
}

PairTerm ipo_term(const PairView& v, double tau) {
  const double target = 1.0 / (2.0 * tau);
  const double h = (v.lw - v.rw) - (v.ll - v.rl);
  const double diff = h - target;
  return {diff * diff, 2.0 * diff, -2.0 * diff};
}

PairTerm kto_term(const PairView& v, double beta, double gamma) {
  const double sw = stable_sigmoid(beta * (v.lw - v.rw));
  const double sl = stable_sigmoid(-beta * (v.ll - v.rl));
  PairTerm t;
  t.value = 0.5 * (gamma * (1.0 - sw) + gamma * (1.0 - sl));
  t.d_lw = -0.5 * gamma * beta * sw * (1.0 - sw);
  t.d_ll = 0.5 * gamma * beta * sl * (1.0 - sl);
  return t;
}

PairTerm rdpo_term(const PairView& v, double beta, double gamma) {
  const double len_diff = static_cast<double>(v.len_w) - static_cast<double>(v.len_l);
  const double z = beta * ((v.lw - v.rw) - (v.ll - v.rl)) - gamma * len_diff;
  const double s = stable_sigmoid(-z);
  return {stable_softplus(-z), -beta * s, beta * s};
}

PairTerm preference_term(LossKind kind, const PairView& v, double beta, double gamma) {
  switch (kind) {
    case LossKind::sft: return sft_term(v);
    case LossKind::dpo: return dpo_term(v, beta);
    case LossKind::simpo: return simpo_term(v, beta, gamma);
    case LossKind::ipo: return ipo_term(v, gamma);
    case LossKind::kto: return kto_term(v, beta, gamma);
    case LossKind::rdpo: return rdpo_term(v, beta, gamma);
    case LossKind::hybrid: break;
  }
  throw std::invalid_argument("hybrid is not a pair-level loss kind");
}

void validate_spec(const LossSpec& spec, const PolicyParams* reference) {
  const LossKind k = spec.kind == LossKind::hybrid ? spec.pref_kind : spec.kind;
  if (k == LossKind::hybrid) throw std::invalid_argument("loss: hybrid cannot nest hybrid");
  const bool needs_beta = k == LossKind::dpo || k == LossKind::simpo || k == LossKind::kto ||
                          k == LossKind::rdpo;
  if (needs_beta && spec.beta <= 0.0) throw std::invalid_argument("loss.beta must be > 0");
  if (k == LossKind::ipo && spec.gamma <= 0.0) {
    throw std::invalid_argument("loss.gamma (ipo tau) must be > 0");
  }
  const bool needs_ref = k == LossKind::dpo || k == LossKind::ipo || k == LossKind::kto ||
                         k == LossKind::rdpo;
  if (needs_ref && reference == nullptr) {
    throw std::invalid_argument(to_string(k) + " loss requires a reference model");
  }
  if (spec.kind == LossKind::hybrid && (spec.lambda < 0.0 || spec.lambda > 1.0)) {
    throw std::invalid_argument("loss.lambda must be in [0, 1]");
  }
}

struct BatchEval {
  LossValue value;
  std::vector<double> w_winner;  // d scalar / d lw, per triple
  std::vector<double> w_loser;
};

BatchEval eval_batch(const LossSpec& spec, const PolicyParams& policy,
                     const PolicyParams* reference, std::span<const TransitionTriple> batch) {
  if (batch.empty()) throw std::invalid_argument("loss: batch must be non-empty");
  validate_spec(spec, reference);
  const LossKind pref = spec.kind == LossKind::hybrid ? spec.pref_kind : spec.kind;
  const bool hybrid = spec.kind == LossKind::hybrid;
  const double lambda = hybrid ? spec.lambda : 0.0;

  const std::vector<PairView> views = compute_views(policy, reference, batch);
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  BatchEval out;
  out.w_winner.resize(batch.size());
  out.w_loser.resize(batch.size());
  double pref_sum = 0.0, sft_sum = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const PairTerm t = preference_term(pref, views[i], spec.beta, spec.gamma);
    pref_sum += t.value;
    if (hybrid) {
      const PairTerm s = sft_term(views[i]);
      sft_sum += s.value;
      out.w_winner[i] = (lambda * s.d_lw + (1.0 - lambda) * t.d_lw) * inv_b;
      out.w_loser[i] = (1.0 - lambda) * t.d_ll * inv_b;
    } else {
      out.w_winner[i] = t.d_lw * inv_b;
      out.w_loser[i] = t.d_ll * inv_b;
    }
    if (views[i].degenerate) ++out.value.degenerate_pairs;
  }

  const double pref_mean = pref_sum * inv_b;
  if (hybrid) {
    const double sft_mean = sft_sum * inv_b;
    out.value.scalar = lambda * sft_mean + (1.0 - lambda) * pref_mean;
    out.value.components["sft"] = sft_mean;
    out.value.components[to_string(pref)] = pref_mean;
  } else {
    out.value.scalar = pref_mean;
    out.value.components[to_string(pref)] = pref_mean;
  }
  return out;
}

}  // namespace

LossValue sft_loss(const PolicyParams& policy, std::span<const TransitionTriple> batch) {
  LossSpec spec;
  spec.kind = LossKind::sft;
  return eval_batch(spec, policy, nullptr, batch).value;
}

LossValue dpo_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double beta) {
  LossSpec spec;
  spec.kind = LossKind::dpo;
  spec.beta = beta;
  return eval_batch(spec, policy, &reference, batch).value;
}

LossValue simpo_loss(const PolicyParams& policy, std::span<const TransitionTriple> batch,
                     double beta, double gamma) {
  LossSpec spec;
  spec.kind = LossKind::simpo;
  spec.beta = beta;
  spec.gamma = gamma;
  return eval_batch(spec, policy, nullptr, batch).value;
}

LossValue ipo_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double tau) {
  LossSpec spec;
  spec.kind = LossKind::ipo;
  spec.gamma = tau;
  return eval_batch(spec, policy, &reference, batch).value;
}

LossValue kto_loss(const PolicyParams& policy, const PolicyParams& reference,
                   std::span<const TransitionTriple> batch, double beta, double gamma) {
  LossSpec spec;
  spec.kind = LossKind::kto;
  spec.beta = beta;
  spec.gamma = gamma;
  return eval_batch(spec, policy, &reference, batch).value;
}

LossValue rdpo_loss(const PolicyParams& policy, const PolicyParams& reference,
                    std::span<const TransitionTriple> batch, double beta, double gamma) {
  LossSpec spec;
  spec.kind = LossKind::rdpo;
  spec.beta = beta;
  spec.gamma = gamma;
  return eval_batch(spec, policy, &reference, batch).value;
}

LossValue hybrid_loss(double lambda, const LossValue& sft, const LossValue& pref) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must be in [0, 1]");
  LossValue out;
  out.scalar = lambda * sft.scalar + (1.0 - lambda) * pref.scalar;
  out.components["sft"] = sft.scalar;
  for (const auto& [k, v] : pref.components) out.components[k] = v;
  out.degenerate_pairs = pref.degenerate_pairs;
  return out;
}

LossValue eval_loss(const LossSpec& spec, const PolicyParams& policy,
                    const PolicyParams* reference, std::span<const TransitionTriple> batch) {
  return eval_batch(spec, policy, reference, batch).value;
}

LossValue eval_loss_grad(const LossSpec& spec, const PolicyParams& policy,
                         const PolicyParams* reference, std::span<const TransitionTriple> batch,
                         PolicyParams& grad_out) {
  BatchEval ev = eval_batch(spec, policy, reference, batch);
  if (!std::isfinite(ev.value.scalar)) {
    throw std::runtime_error("loss is non-finite");
  }
  grad_out = PolicyParams::zeros(policy.dims);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const TransitionTriple& t = batch[i];
    if (t.winner == t.loser) {
      // Identical sequences: combine weights first so the pair's net
      // preference gradient is exactly zero.
      const double w = ev.w_winner[i] + ev.w_loser[i];
      if (w != 0.0) accumulate_logprob_grad(policy, t.prompt, t.winner, w, grad_out);
      continue;
    }
    if (ev.w_winner[i] != 0.0) {
      accumulate_logprob_grad(policy, t.prompt, t.winner, ev.w_winner[i], grad_out);
    }
    if (ev.w_loser[i] != 0.0) {
      accumulate_logprob_grad(policy, t.prompt, t.loser, ev.w_loser[i], grad_out);
    }
  }
  return ev.value;
}

}  // namespace rrpo
