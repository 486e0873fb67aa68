// SPDX-License-Identifier: Apache-2.0
#include "rrpo/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rrpo {

using nlohmann::json;

json policy_to_json(const PolicyParams& params) {
  json j;
  j["dims"] = {params.dims.vocab, params.dims.embed_dim, params.dims.hidden_dim,
               params.dims.context};
  json groups;
  auto tensors = params.tensors();
  for (int i = 0; i < PolicyParams::kTensorCount; ++i) {
    groups[PolicyParams::kTensorNames[i]] = *tensors[i];
  }
  j["groups"] = std::move(groups);
  return j;
}

PolicyParams policy_from_json(const json& j) {
  const auto& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 4) {
    throw std::runtime_error("checkpoint: dims must be a 4-element array");
  }
  ModelDims d{dims[0].get<int>(), dims[1].get<int>(), dims[2].get<int>(), dims[3].get<int>()};
  PolicyParams p = PolicyParams::zeros(d);
  const auto& groups = j.at("groups");
  auto tensors = p.tensors();
  for (int i = 0; i < PolicyParams::kTensorCount; ++i) {
    const char* name = PolicyParams::kTensorNames[i];
    auto values = groups.at(name).get<std::vector<double>>();
    if (values.size() != tensors[i]->size()) {
      throw std::runtime_error(std::string("checkpoint: tensor '") + name +
                               "' has wrong element count");
    }
    for (double x : values) {
      if (!std::isfinite(x)) {
        throw std::runtime_error(std::string("checkpoint: non-finite entry in '") + name + "'");
      }
    }
    *tensors[i] = std::move(values);
  }
  return p;
}

void save_policy(const std::filesystem::path& path, const PolicyParams& params) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
  out << policy_to_json(params).dump() << '\n';
}

PolicyParams load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
  json j;
  in >> j;
  return policy_from_json(j);
}

}  // namespace rrpo
