// SPDX-License-Identifier: Apache-2.0
#include "rrpo/reset.hpp"

#include <stdexcept>

namespace rrpo {

PolicyParams shrink_perturb(const PolicyParams& current, const PolicyParams& init,
                            const ResetSpec& spec) {
  if (spec.alpha < 0.0 || spec.alpha > 1.0) {
    throw std::invalid_argument("reset alpha must be in [0, 1]");
  }
  if (!current.same_shape(init)) {
    throw std::invalid_argument("shrink_perturb: current and init dims differ");
  }
  PolicyParams out = current;
  if (spec.alpha == 1.0 || spec.groups.empty()) return out;

  auto o = out.tensors();
  auto c = current.tensors();
  auto z = init.tensors();
  for (int ti = 0; ti < PolicyParams::kTensorCount; ++ti) {
    if (!spec.groups.contains(PolicyParams::kTensorGroups[ti])) continue;
    const std::size_t count = o[ti]->size();
    double* dst = o[ti]->data();
    const double* cur = c[ti]->data();
    const double* ini = z[ti]->data();
    if (spec.alpha == 0.0) {
      for (std::size_t i = 0; i < count; ++i) dst[i] = ini[i];
    } else {
      for (std::size_t i = 0; i < count; ++i) {
        dst[i] = spec.alpha * cur[i] + (1.0 - spec.alpha) * ini[i];
      }
    }
  }
  return out;
}

std::set<ParamGroup> resolve_groups(std::string_view selector) {
  if (selector == "output") return {ParamGroup::output};
  if (selector == "hidden+output") return {ParamGroup::hidden, ParamGroup::output};
  if (selector == "all") {
    return {ParamGroup::embedding, ParamGroup::hidden, ParamGroup::output};
  }
  throw std::invalid_argument("unknown reset group selector: " + std::string(selector));
}

}  // namespace rrpo
