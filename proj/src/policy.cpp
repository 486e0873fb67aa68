// SPDX-License-Identifier: Apache-2.0
#include "rrpo/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace rrpo {

std::string to_string(ParamGroup g) {
  switch (g) {
    case ParamGroup::embedding: return "embedding";
    case ParamGroup::hidden: return "hidden";
    case ParamGroup::output: return "output";
  }
  return "?";
}

static void check_dims(const ModelDims& d) {
  if (d.vocab <= 0 || d.embed_dim <= 0 || d.hidden_dim <= 0 || d.context <= 0) {
    throw std::invalid_argument("model dims must be positive");
  }
}

PolicyParams PolicyParams::zeros(const ModelDims& dims) {
  check_dims(dims);
  PolicyParams p;
  p.dims = dims;
  p.embedding.assign(static_cast<std::size_t>(dims.vocab) * dims.embed_dim, 0.0);
  p.hidden_w.assign(static_cast<std::size_t>(dims.hidden_dim) * dims.context * dims.embed_dim, 0.0);
  p.hidden_b.assign(dims.hidden_dim, 0.0);
  p.out_w.assign(static_cast<std::size_t>(dims.vocab) * dims.hidden_dim, 0.0);
  p.out_b.assign(dims.vocab, 0.0);
  return p;
}

std::size_t PolicyParams::total_size() const {
  return embedding.size() + hidden_w.size() + hidden_b.size() + out_w.size() + out_b.size();
}

std::array<std::vector<double>*, PolicyParams::kTensorCount> PolicyParams::tensors() {
  return {&embedding, &hidden_w, &hidden_b, &out_w, &out_b};
}

std::array<const std::vector<double>*, PolicyParams::kTensorCount> PolicyParams::tensors() const {
  return {&embedding, &hidden_w, &hidden_b, &out_w, &out_b};
}

bool PolicyParams::same_shape(const PolicyParams& other) const {
  if (!(dims == other.dims)) return false;
  auto a = tensors();
  auto b = other.tensors();
  for (int i = 0; i < kTensorCount; ++i) {
    if (a[i]->size() != b[i]->size()) return false;
  }
  return true;
}

bool PolicyParams::bit_identical(const PolicyParams& other) const {
  if (!same_shape(other)) return false;
  auto a = tensors();
  auto b = other.tensors();
  for (int i = 0; i < kTensorCount; ++i) {
    if (!a[i]->empty() &&
        std::memcmp(a[i]->data(), b[i]->data(), a[i]->size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

PolicyParams init_params(std::uint64_t seed, const ModelDims& dims) {
  check_dims(dims);
  PolicyParams p = PolicyParams::zeros(dims);
  RngStream rng = derive_stream(seed, StreamPurpose::param_init, {});
  auto fill = [&rng](std::vector<double>& v, double scale) {
    for (double& x : v) x = (2.0 * rng.next_double() - 1.0) * scale;
  };
  const double s_embed = 1.0 / std::sqrt(static_cast<double>(dims.embed_dim));
  const double s_hidden = 1.0 / std::sqrt(static_cast<double>(dims.context * dims.embed_dim));
  const double s_out = 1.0 / std::sqrt(static_cast<double>(dims.hidden_dim));
  fill(p.embedding, s_embed);
  fill(p.hidden_w, s_hidden);
  fill(p.hidden_b, s_hidden);
  fill(p.out_w, s_out);
  fill(p.out_b, s_out);
  return p;
}

// Window of the last n context tokens, left-padded with bos.
static void context_window(const PolicyParams& params, const TokenSeq& context,
                           std::vector<TokenId>& window) {
  if (context.empty()) throw std::invalid_argument("context must be non-empty");
  const int n = params.dims.context;
  window.resize(n);
  const long len = static_cast<long>(context.size());
  for (int i = 0; i < n; ++i) {
    const long idx = len - n + i;
    TokenId t = idx < 0 ? kBosId : context[static_cast<std::size_t>(idx)];
    if (t < 0 || t >= params.dims.vocab) {
      throw std::invalid_argument("token id out of range: " + std::to_string(t));
    }
    window[i] = t;
  }
}

struct ForwardCache {
  std::vector<TokenId> window;
  std::vector<double> input;   // concat of window embeddings, n*d
  std::vector<double> hidden;  // tanh activations, d_h
  std::vector<double> logits;  // V
};

static void forward_pass(const PolicyParams& p, const TokenSeq& context, ForwardCache& c) {
  const auto& d = p.dims;
  context_window(p, context, c.window);
  c.input.resize(static_cast<std::size_t>(d.context) * d.embed_dim);
  for (int j = 0; j < d.context; ++j) {
    const double* row = &p.embedding[static_cast<std::size_t>(c.window[j]) * d.embed_dim];
    std::copy(row, row + d.embed_dim, c.input.begin() + static_cast<std::size_t>(j) * d.embed_dim);
  }
  const int in_dim = d.context * d.embed_dim;
  c.hidden.resize(d.hidden_dim);
  for (int i = 0; i < d.hidden_dim; ++i) {
    const double* row = &p.hidden_w[static_cast<std::size_t>(i) * in_dim];
    double acc = p.hidden_b[i];
    for (int j = 0; j < in_dim; ++j) acc += row[j] * c.input[j];
    c.hidden[i] = std::tanh(acc);
  }
  c.logits.resize(d.vocab);
  for (int v = 0; v < d.vocab; ++v) {
    const double* row = &p.out_w[static_cast<std::size_t>(v) * d.hidden_dim];
    double acc = p.out_b[v];
    for (int i = 0; i < d.hidden_dim; ++i) acc += row[i] * c.hidden[i];
    c.logits[v] = acc;
  }
}

std::vector<double> forward_logits(const PolicyParams& params, const TokenSeq& context) {
  ForwardCache c;
  forward_pass(params, context, c);
  return c.logits;
}

static double log_sum_exp(const std::vector<double>& v) {
  double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double sequence_logprob(const PolicyParams& params, const TokenSeq& prompt,
                        const TokenSeq& response) {
  if (response.empty()) throw std::invalid_argument("response must be non-empty");
  TokenSeq context = prompt;
  context.reserve(prompt.size() + response.size());
  ForwardCache c;
  double logprob = 0.0;
  for (TokenId tok : response) {
    if (tok < 0 || tok >= params.dims.vocab) {
      throw std::invalid_argument("response token out of range");
    }
    forward_pass(params, context, c);
    logprob += c.logits[tok] - log_sum_exp(c.logits);
    context.push_back(tok);
  }
  return logprob;
}

static int argmax_index(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

TokenSeq sample_response(const PolicyParams& params, const TokenSeq& prompt,
                         const SampleOptions& opts, RngStream& rng) {
  if (!opts.greedy && opts.temperature <= 0.0) {
    throw std::invalid_argument("temperature must be > 0 (use greedy for argmax)");
  }
  if (opts.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  TokenSeq context = prompt;
  TokenSeq response;
  ForwardCache c;
  std::vector<double> probs(params.dims.vocab);
  for (int t = 0; t < opts.max_len; ++t) {
    forward_pass(params, context, c);
    TokenId tok;
    if (opts.greedy) {
      tok = argmax_index(c.logits);
    } else {
      double m = *std::max_element(c.logits.begin(), c.logits.end());
      double z = 0.0;
      for (int v = 0; v < params.dims.vocab; ++v) {
        probs[v] = std::exp((c.logits[v] - m) / opts.temperature);
        z += probs[v];
      }
      const double u = rng.next_double() * z;
      double cum = 0.0;
      tok = params.dims.vocab - 1;  // fp-leak fallback
      for (int v = 0; v < params.dims.vocab; ++v) {
        cum += probs[v];
        if (u < cum) {
          tok = v;
          break;
        }
      }
    }
    response.push_back(tok);
    context.push_back(tok);
    if (tok == opts.eos_id) break;
  }
  return response;
}

std::vector<TokenSeq> sample_responses(const PolicyParams& params, const TokenSeq& prompt,
                                       int k, const SampleOptions& opts, RngStream& rng) {
  if (k < 2) throw std::invalid_argument("sample count K must be >= 2");
  std::vector<TokenSeq> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(sample_response(params, prompt, opts, rng));
  return out;
}

TokenSeq greedy_decode(const PolicyParams& params, const TokenSeq& prompt, int max_len,
                       TokenId eos_id) {
  SampleOptions opts;
  opts.max_len = max_len;
  opts.greedy = true;
  opts.eos_id = eos_id;
  RngStream unused(0);
  return sample_response(params, prompt, opts, unused);
}

void accumulate_logprob_grad(const PolicyParams& params, const TokenSeq& prompt,
                             const TokenSeq& response, double weight, PolicyParams& grad) {
  if (response.empty()) throw std::invalid_argument("response must be non-empty");
  if (!params.same_shape(grad)) throw std::invalid_argument("grad shape mismatch");
  const auto& d = params.dims;
  const int in_dim = d.context * d.embed_dim;
  TokenSeq context = prompt;
  ForwardCache c;
  std::vector<double> dlogits(d.vocab), dhidden(d.hidden_dim), dpre(d.hidden_dim),
      dinput(in_dim), probs(d.vocab);
  for (TokenId tok : response) {
    if (tok < 0 || tok >= d.vocab) throw std::invalid_argument("response token out of range");
    forward_pass(params, context, c);

    // d logp[tok] / d logits = onehot(tok) - softmax(logits)
    double m = *std::max_element(c.logits.begin(), c.logits.end());
    double z = 0.0;
    for (int v = 0; v < d.vocab; ++v) {
      probs[v] = std::exp(c.logits[v] - m);
      z += probs[v];
    }
    for (int v = 0; v < d.vocab; ++v) {
      dlogits[v] = weight * ((v == tok ? 1.0 : 0.0) - probs[v] / z);
    }

    for (int v = 0; v < d.vocab; ++v) {
      grad.out_b[v] += dlogits[v];
      double* grow = &grad.out_w[static_cast<std::size_t>(v) * d.hidden_dim];
      for (int i = 0; i < d.hidden_dim; ++i) grow[i] += dlogits[v] * c.hidden[i];
    }
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (int v = 0; v < d.vocab; ++v) {
      const double* row = &params.out_w[static_cast<std::size_t>(v) * d.hidden_dim];
      for (int i = 0; i < d.hidden_dim; ++i) dhidden[i] += row[i] * dlogits[v];
    }
    for (int i = 0; i < d.hidden_dim; ++i) {
      dpre[i] = dhidden[i] * (1.0 - c.hidden[i] * c.hidden[i]);
      grad.hidden_b[i] += dpre[i];
    }
    std::fill(dinput.begin(), dinput.end(), 0.0);
    for (int i = 0; i < d.hidden_dim; ++i) {
      const double* row = &params.hidden_w[static_cast<std::size_t>(i) * in_dim];
      double* grow = &grad.hidden_w[static_cast<std::size_t>(i) * in_dim];
      for (int j = 0; j < in_dim; ++j) {
        grow[j] += dpre[i] * c.input[j];
        dinput[j] += row[j] * dpre[i];
      }
    }
    for (int j = 0; j < d.context; ++j) {
      double* erow = &grad.embedding[static_cast<std::size_t>(c.window[j]) * d.embed_dim];
      const double* din = &dinput[static_cast<std::size_t>(j) * d.embed_dim];
      for (int e = 0; e < d.embed_dim; ++e) erow[e] += din[e];
    }

    context.push_back(tok);
  }
}

// ---------------------------------------------------------------------------

OptimizerState OptimizerState::create(const ModelDims& dims, double lr_base, long total_steps,
                                      double warmup_frac, double weight_decay) {
  if (total_steps < 1) throw std::invalid_argument("total_steps must be >= 1");
  if (warmup_frac < 0.0 || warmup_frac >= 1.0) {
    throw std::invalid_argument("warmup_frac must be in [0, 1)");
  }
  OptimizerState s;
  s.first_moment = PolicyParams::zeros(dims);
  s.second_moment = PolicyParams::zeros(dims);
  s.lr_base = lr_base;
  s.total_steps = total_steps;
  s.warmup_frac = warmup_frac;
  s.weight_decay = weight_decay;
  return s;
}

double effective_lr(const OptimizerState& opt) {
  const long warmup_steps =
      std::max<long>(1, static_cast<long>(std::llround(opt.warmup_frac * opt.total_steps)));
  const long s = opt.step_count;
  if (s < warmup_steps) {
    return opt.lr_base * static_cast<double>(s + 1) / static_cast<double>(warmup_steps);
  }
  const long decay_steps = std::max<long>(1, opt.total_steps - warmup_steps);
  double progress = static_cast<double>(s - warmup_steps) / static_cast<double>(decay_steps);
  progress = std::min(progress, 1.0);
  const double pi = 3.14159265358979323846;
  return opt.lr_base * 0.5 * (1.0 + std::cos(pi * progress));
}

void adamw_step(PolicyParams& params, const PolicyParams& grads, OptimizerState& opt) {
  if (!params.same_shape(grads) || !params.same_shape(opt.first_moment)) {
    throw std::invalid_argument("adamw_step shape mismatch");
  }
  const double lr = effective_lr(opt);
  const long t = opt.step_count + 1;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(t));
  auto p = params.tensors();
  auto g = grads.tensors();
  auto m = opt.first_moment.tensors();
  auto v = opt.second_moment.tensors();
  for (int ti = 0; ti < PolicyParams::kTensorCount; ++ti) {
    double* pp = p[ti]->data();
    const double* gg = g[ti]->data();
    double* mm = m[ti]->data();
    double* vv = v[ti]->data();
    const std::size_t count = p[ti]->size();
    for (std::size_t i = 0; i < count; ++i) {
      mm[i] = opt.beta1 * mm[i] + (1.0 - opt.beta1) * gg[i];
      vv[i] = opt.beta2 * vv[i] + (1.0 - opt.beta2) * gg[i] * gg[i];
      const double mhat = mm[i] / bc1;
      const double vhat = vv[i] / bc2;
      pp[i] -= lr * (mhat / (std::sqrt(vhat) + opt.eps) + opt.weight_decay * pp[i]);
    }
  }
  opt.step_count = t;
}

void zero_moments_for_groups(OptimizerState& opt, std::span<const ParamGroup> groups) {
  auto in_groups = [&groups](ParamGroup g) {
    for (ParamGroup x : groups) {
      if (x == g) return true;
    }
    return false;
  };
  auto m = opt.first_moment.tensors();
  auto v = opt.second_moment.tensors();
  for (int ti = 0; ti < PolicyParams::kTensorCount; ++ti) {
    if (!in_groups(PolicyParams::kTensorGroups[ti])) continue;
    std::fill(m[ti]->begin(), m[ti]->end(), 0.0);
    std::fill(v[ti]->begin(), v[ti]->end(), 0.0);
  }
}

}  // namespace rrpo
