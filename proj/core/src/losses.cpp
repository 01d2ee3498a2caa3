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

#include "egan/losses.hpp"

#include <stdexcept>

#include "egan/ops.hpp"

namespace egan::losses {

namespace ad = egan::ad;

namespace {

void require_batch(const nets::BeliefPair& b, const char* op) {
  if (!b.b_real.defined() || b.b_real.size() == 0)
    throw std::invalid_argument(std::string(op) + ": empty batch");
}

ad::Tensor log_clamped(const ad::Tensor& t) {
  return ad::log(ad::clamp(t, kLogEps, 1.0 - kLogEps));
}

// mean[log b_hi + log(1 - b_lo)]: the non-saturating credit for pushing
// b_hi up and b_lo down.
ad::Tensor log_credit(const ad::Tensor& b_hi, const ad::Tensor& b_lo) {
  return ad::mean(
      ad::add(log_clamped(b_hi),
              log_clamped(ad::add_scalar(ad::neg(b_lo), 1.0))));
}

// mean[max(0, b_real + b_fake - 1)]
ad::Tensor hinge_mean(const nets::BeliefPair& b) {
  return ad::mean(ad::max_with_scalar(
      ad::add_scalar(ad::add(b.b_real, b.b_fake), -1.0), 0.0));
}

}  // namespace

double dirichlet_variance_trace(double a1, double a2, double a3) {
  const double a0 = a1 + a2 + a3;
  const double den = a0 * a0 * (a0 + 1.0);
  return (a1 * (a0 - a1) + a2 * (a0 - a2) + a3 * (a0 - a3)) / den;
}

LossReport discriminator_loss(const nets::BeliefPair& real,
                              const nets::BeliefPair& fake,
                              const LossWeights& w) {
  require_batch(real, "discriminator_loss");
  require_batch(fake, "discriminator_loss");

  ad::Tensor adversarial = ad::neg(
      ad::add(log_credit(real.b_real, real.b_fake),
              log_credit(fake.b_fake, fake.b_real)));
  ad::Tensor penalty = ad::add(hinge_mean(real), hinge_mean(fake));
  ad::Tensor total = ad::add(adversarial, ad::mul_scalar(penalty, w.lambda));

  LossReport r;
  r.adversarial = adversarial.item();
  r.constraint_penalty = penalty.item();
  r.total = total.item();
  r.total_tensor = total;
  return r;
}

LossReport generator_loss(const nets::BeliefPair& fake,
                          const nets::DirichletField& field,
                          const nets::IntervalMap& intervals,
                          const LossWeights& w) {
  require_batch(fake, "generator_loss");

  ad::Tensor adversarial = ad::neg(log_credit(fake.b_real, fake.b_fake));
  ad::Tensor total = adversarial;

  LossReport r;
  r.adversarial = adversarial.item();

  if (field.alphas.defined() && field.regions > 0) {
    const std::size_t R = field.regions;
    ad::Tensor a1 = ad::slice_cols(field.alphas, 0, R);
    ad::Tensor a2 = ad::slice_cols(field.alphas, R, 2 * R);
    ad::Tensor a3 = ad::slice_cols(field.alphas, 2 * R, 3 * R);
    ad::Tensor a0 = ad::add(ad::add(a1, a2), a3);
    ad::Tensor den = ad::mul(ad::square(a0), ad::add_scalar(a0, 1.0));
    ad::Tensor num = ad::add(
        ad::add(ad::mul(a1, ad::sub(a0, a1)), ad::mul(a2, ad::sub(a0, a2))),
        ad::mul(a3, ad::sub(a0, a3)));
    // Promotion: the variance trace enters negated, so minimizing the total
    // pushes mass toward flatter Dirichlets while gamma bounds the width.
    ad::Tensor variance = ad::neg(ad::mean(ad::div(num, den)));
    ad::Tensor width = ad::mean(ad::div(a3, a0));

    total = ad::add(total, ad::add(ad::mul_scalar(variance, w.beta),
                                   ad::mul_scalar(width, w.gamma)));
    r.variance_term = variance.item();
    r.width_term = width.item();
    if (intervals.width.defined()) {
      double acc = 0.0;
      for (double v : intervals.width.values()) acc += v;
      r.sampled_mean_width = acc / static_cast<double>(intervals.width.size());
    }
  }
  r.total = total.item();
  r.total_tensor = total;
  return r;
}

LossReport standard_discriminator_loss(const nets::BeliefPair& real,
                                       const nets::BeliefPair& fake) {
  require_batch(real, "standard_discriminator_loss");
  require_batch(fake, "standard_discriminator_loss");
  // Adapted pair: b_real is p, so log(1 - p_fake) = log b_fake of the fakes.
  ad::Tensor total = ad::neg(ad::add(ad::mean(log_clamped(real.b_real)),
                                     ad::mean(log_clamped(fake.b_fake))));
  LossReport r;
  r.adversarial = total.item();
  r.total = r.adversarial;
  r.total_tensor = total;
  return r;
}

LossReport standard_generator_loss(const nets::BeliefPair& fake) {
  require_batch(fake, "standard_generator_loss");
  ad::Tensor total = ad::neg(ad::mean(log_clamped(fake.b_real)));
  LossReport r;
  r.adversarial = total.item();
  r.total = r.adversarial;
  r.total_tensor = total;
  return r;
}

}  // namespace egan::losses
