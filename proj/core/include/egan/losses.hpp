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

#include "egan/networks.hpp"
#include "egan/tensor.hpp"

namespace egan::losses {

/// Log arguments are clamped to [kLogEps, 1 - kLogEps] first; the adversarial
/// formulas are singular at {0, 1}.
inline constexpr double kLogEps = 1e-6;

struct LossWeights {
  double lambda = 1.0;  // belief-constraint hinge
  double beta = 1.0;    // Dirichlet-variance promotion
  double gamma = 1.0;   // interval-width precision
};

/// Diagnostic decomposition. Parts are unweighted;
/// total = adversarial + lambda*constraint_penalty + beta*variance_term
///       + gamma*width_term, within 1e-9. variance_term is the negated
/// Dirichlet variance trace (promotion), so it is <= 0 when a field is
/// present.
struct LossReport {
  double total = 0.0;
  double adversarial = 0.0;
  double constraint_penalty = 0.0;
  double variance_term = 0.0;
  double width_term = 0.0;
  /// Mean of the sampled widths (forward values); the width_term above is the
  /// closed-form mean alpha3/alpha0 used on the gradient path.
  double sampled_mean_width = 0.0;
  /// Differentiable scalar; backward() on it drives training.
  ad::Tensor total_tensor;
};

/// Evidential discriminator objective: real samples should earn high b_real
/// and low b_fake, fake samples the reverse, with a hinge on
/// b_real + b_fake - 1 for both branches. Throws on an empty batch.
LossReport discriminator_loss(const nets::BeliefPair& real,
                              const nets::BeliefPair& fake,
                              const LossWeights& w);

/// Evidential (non-saturating) generator objective plus the closed-form
/// Dirichlet variance and width regularizers. An empty field (plain-generator
/// modes) zeroes the beta and gamma terms. Throws on an empty batch.
LossReport generator_loss(const nets::BeliefPair& fake,
                          const nets::DirichletField& field,
                          const nets::IntervalMap& intervals,
                          const LossWeights& w);

/// Classic non-saturating GAN objectives over the adapted pair
/// (b_real = p, b_fake = 1 - p) emitted by a scalar-head discriminator.
LossReport standard_discriminator_loss(const nets::BeliefPair& real,
                                       const nets::BeliefPair& fake);
LossReport standard_generator_loss(const nets::BeliefPair& fake);

/// Trace of the per-component Dirichlet variances,
/// sum_k alpha_k (alpha0 - alpha_k) / (alpha0^2 (alpha0 + 1)).
double dirichlet_variance_trace(double a1, double a2, double a3);

}  // namespace egan::losses
