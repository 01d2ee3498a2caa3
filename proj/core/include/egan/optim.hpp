/*
 * Copyright 2026 The egan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "egan/tensor.hpp"

namespace egan::ad {

/// Adam with bias correction. Defaults match the training setup used by the
/// bundled experiments (lr 2e-4, beta1 0.5).
struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamConfig config = {});

  /// Applies one update from the accumulated gradients, then zeroes them.
  /// Throws if any parameter has no gradient buffer.
  void step();

  /// Zeroes gradient buffers without updating.
  void zero_grad();

  const std::vector<Tensor>& params() const { return params_; }
  const AdamConfig& config() const { return config_; }
  std::size_t steps_taken() const { return t_; }

  // Moment access for checkpointing.
  std::vector<double>& first_moment(std::size_t i) { return m_[i]; }
  std::vector<double>& second_moment(std::size_t i) { return v_[i]; }
  void set_steps_taken(std::size_t t) { t_ = t; }

 private:
  std::vector<Tensor> params_;
  AdamConfig config_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  std::size_t t_ = 0;
};

}  // namespace egan::ad
