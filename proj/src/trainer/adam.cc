//
// Copyright 2026 The MABEL-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "mabel/trainer/adam.h"

#include <cmath>

#include "mabel/core/error.h"

namespace mabel {

Adam::Adam(const AdamConfig& config, const std::vector<NamedTensor>& params)
    : config_(config) {
  if (!(config.lr >= 0.0) || !(config.eps > 0.0) || !(config.beta1 >= 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 >= 0.0 && config.beta2 < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "invalid Adam hyperparameters");
  }
  for (const NamedTensor& p : params) {
    m_.emplace_back(p.value.shape);
    v_.emplace_back(p.value.shape);
  }
}

double Adam::NextLr() const {
  if (config_.warmup_steps == 0 || t_ >= config_.warmup_steps) return config_.lr;
  return config_.lr * static_cast<double>(t_ + 1) /
         static_cast<double>(config_.warmup_steps);
}

void Adam::Step(std::vector<NamedTensor>& params, const std::vector<Tensor>& grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "optimizer state does not match parameters");
  }
  const double lr = NextLr();
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (size_t k = 0; k < params.size(); ++k) {
    Tensor& p = params[k].value;
    const Tensor& g = grads[k];
    if (g.shape != p.shape) {
      throw Error(ErrorCode::kShapeMismatch, "gradient shape for " + params[k].name);
    }
    for (size_t i = 0; i < p.size(); ++i) {
      m_[k][i] = b1 * m_[k][i] + (1.0 - b1) * g[i];
      v_[k][i] = b2 * v_[k][i] + (1.0 - b2) * g[i] * g[i];
      const double m_hat = m_[k][i] / c1;
      const double v_hat = v_[k][i] / c2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
  }
}

}  // namespace mabel
