// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>

namespace rrpo {

// Deterministic splitmix64 stream. Hand-rolled instead of <random> because
// the standard distributions are implementation-defined and runs must be
// bit-reproducible across compilers.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Purpose tags keep the derived streams decorrelated: skipping a draw of one
// kind (e.g. the mixing gate) never shifts the draws of another kind.
enum class StreamPurpose : std::uint64_t {
  param_init = 1,
  rollout = 2,
  mix_gate = 3,
  shuffle = 4,
  initial_loser = 5,
  dataset_gen = 6,
};

inline std::uint64_t mix_seed(std::uint64_t h, std::uint64_t e) {
  // boost-style hash combine on top of the splitmix finalizer
  h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  std::uint64_t z = h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Child stream addressed by (root, path). Same address, same stream —
// results never depend on the order streams are consumed in.
inline RngStream derive_stream(std::uint64_t root,
                               std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix_seed(0x5851f42d4c957f2dull, root);
  for (std::uint64_t e : path) h = mix_seed(h, e);
  return RngStream(h);
}

inline RngStream derive_stream(std::uint64_t root, StreamPurpose purpose,
                               std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix_seed(0x5851f42d4c957f2dull, root);
  h = mix_seed(h, static_cast<std::uint64_t>(purpose));
  for (std::uint64_t e : path) h = mix_seed(h, e);
  return RngStream(h);
}

}  // namespace rrpo
