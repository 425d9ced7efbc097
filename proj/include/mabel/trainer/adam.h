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

#ifndef MABEL_TRAINER_ADAM_H_
#define MABEL_TRAINER_ADAM_H_

#include <cstddef>
#include <vector>

#include "mabel/core/tensor.h"
#include "mabel/encoder/encoder.h"

namespace mabel {

struct AdamConfig {
  double lr = 5e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Linear ramp from 0 to lr over this many steps; 0 keeps lr constant.
  size_t warmup_steps = 0;
};

class Adam {
 public:
  Adam(const AdamConfig& config, const std::vector<NamedTensor>& params);

  // Learning rate applied by the next call to Step.
  double NextLr() const;
  // Applies one update; grads are parallel to params.
  void Step(std::vector<NamedTensor>& params, const std::vector<Tensor>& grads);
  size_t steps() const { return t_; }

 private:
  AdamConfig config_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  size_t t_ = 0;
};

}  // namespace mabel

#endif  // MABEL_TRAINER_ADAM_H_
