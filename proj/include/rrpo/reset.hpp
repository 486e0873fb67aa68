// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string_view>

#include "rrpo/policy.hpp"

namespace rrpo {

// Shrink & perturb: p <- alpha*p + (1-alpha)*p_init on the selected
// parameter groups; everything else is left bit-identical.
struct ResetSpec {
  double alpha = 0.5;
  std::set<ParamGroup> groups = {ParamGroup::output};
};

// alpha in [0,1] required. alpha==1 and alpha==0 are exact copies of the
// current / initial tensors so the endpoints are bitwise.
PolicyParams shrink_perturb(const PolicyParams& current, const PolicyParams& init,
                            const ResetSpec& spec);

// "output" -> {output}; "hidden+output" -> {hidden, output};
// "all" -> {embedding, hidden, output}. Throws on anything else.
std::set<ParamGroup> resolve_groups(std::string_view selector);

}  // namespace rrpo
