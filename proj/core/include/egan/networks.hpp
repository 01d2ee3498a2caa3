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

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "egan/rng.hpp"
#include "egan/tensor.hpp"

namespace egan::nets {

/// Which heads exist. `standard` is a plain GAN; `epistemic` pairs the
/// belief-pair discriminator with the Dirichlet two-stage generator; the two
/// hybrid modes enable exactly one of those components.
enum class Mode { standard, epistemic, evid_d_only, evid_g_only };

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& name);

/// True when the discriminator carries (b_real, b_fake) sigmoid heads.
bool mode_uses_belief_head(Mode mode);
/// True when the generator runs the Dirichlet mass-prediction stage.
bool mode_uses_dirichlet_generator(Mode mode);

struct NetConfig {
  std::size_t data_dim = 2;
  std::size_t latent_dim = 32;
  std::vector<std::size_t> hidden = {64, 64};
  std::size_t regions = 16;
  Mode mode = Mode::epistemic;
};

/// Batched belief pair: both tensors are [batch, 1] sigmoid outputs.
/// b_real + b_fake <= 1 is not hard-enforced; the hinge penalty handles it.
struct BeliefPair {
  ad::Tensor b_real;
  ad::Tensor b_fake;
};

/// Measured sub-additivity defect, mean over the batch of
/// max(0, b_real + b_fake - 1).
double mean_violation(const BeliefPair& b);
/// Mean over the batch of max(0, 1 - b_real - b_fake).
double mean_ignorance(const BeliefPair& b);

/// Per-region Dirichlet concentrations for a batch. `alphas` is
/// [batch, 3*regions] in component-major layout: column r holds alpha_1 of
/// region r, column regions+r holds alpha_2, column 2*regions+r holds
/// alpha_3. Every entry is positive (softplus + 1e-3 floor).
struct DirichletField {
  std::size_t regions = 0;
  ad::Tensor alphas;
};

/// Sampled simplex points, same component-major layout as DirichletField.
/// Plain values: gradients route through the straight-through interval map.
struct MassSample {
  std::size_t regions = 0;
  std::size_t batch = 0;
  std::vector<double> m;

  std::array<double, 3> triple(std::size_t b, std::size_t r) const {
    const std::size_t cols = 3 * regions;
    return {m[b * cols + r], m[b * cols + regions + r],
            m[b * cols + 2 * regions + r]};
  }
};

/// Per-region intervals, each tensor [batch, regions]. Forward values are the
/// sampled (lo, hi) = (m1, m1 + m3); the gradient path is the Dirichlet mean.
/// width = hi - lo = m3 exactly.
struct IntervalMap {
  std::size_t regions = 0;
  ad::Tensor lo;
  ad::Tensor hi;
  ad::Tensor width;
};

/// Maps a simplex point to its interval: lo = m1, hi = m1 + m3. The width is
/// the third (ignorance) mass, so the width penalty acts on one component.
std::pair<double, double> interval_from_mass(double m1, double m2, double m3);

/// Fully connected stack with tanh hidden activations and a linear output.
/// Weights are Xavier-uniform, biases zero.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::size_t in_dim, const std::vector<std::size_t>& hidden,
      std::size_t out_dim, Rng& rng);

  ad::Tensor forward(const ad::Tensor& x) const;
  std::vector<ad::Tensor> params() const;
  void append_named(const std::string& prefix,
                    std::vector<std::pair<std::string, ad::Tensor>>& out) const;

 private:
  std::vector<ad::Tensor> weights_;
  std::vector<ad::Tensor> biases_;
};

class Discriminator {
 public:
  Discriminator(const NetConfig& config, Rng& rng);

  /// Shared tanh trunk, then sigmoid head(s). In scalar-head modes the single
  /// probability p is adapted as (b_real = p, b_fake = 1 - p) so downstream
  /// code is uniform.
  BeliefPair discriminate(const ad::Tensor& x) const;

  bool belief_head() const { return belief_head_; }
  std::vector<ad::Tensor> params() const;
  std::vector<std::pair<std::string, ad::Tensor>> named_params() const;

 private:
  Mlp trunk_;
  Mlp head_;
  bool belief_head_ = true;
};

struct GenOutput {
  ad::Tensor sample;
  DirichletField field;
  MassSample masses;
  IntervalMap intervals;
};

/// Draws one simplex point per (batch element, region) and forms the
/// straight-through interval map: forward uses the sample, backward uses the
/// analytic mean alpha/alpha0.
std::pair<MassSample, IntervalMap> sample_intervals(const DirichletField& field,
                                                    Rng& rng);

class Generator {
 public:
  Generator(const NetConfig& config, Rng& rng);

  /// Dirichlet modes: predict_mass -> sample_intervals -> construct. Plain
  /// modes: one MLP with tanh output; field/intervals stay empty.
  GenOutput generate(const ad::Tensor& z, Rng& rng) const;

  DirichletField predict_mass(const ad::Tensor& z) const;
  ad::Tensor construct(const IntervalMap& intervals) const;

  bool dirichlet_stage() const { return dirichlet_; }
  std::size_t regions() const { return regions_; }
  std::vector<ad::Tensor> params() const;
  std::vector<std::pair<std::string, ad::Tensor>> named_params() const;

 private:
  // Dirichlet path: the configured hidden stack is split across the two
  // stages so the per-step cost stays close to the plain generator's.
  Mlp stage1_;
  Mlp stage2_;
  Mlp plain_;
  bool dirichlet_ = true;
  std::size_t regions_ = 0;
};

/// Standard-normal latent batch [batch, latent_dim].
ad::Tensor sample_latent(std::size_t batch, std::size_t latent_dim, Rng& rng);

}  // namespace egan::nets
