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

#include "egan/networks.hpp"

#include <cmath>
#include <stdexcept>

#include "egan/ops.hpp"

namespace egan::nets {

namespace ad = egan::ad;

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::standard: return "standard";
    case Mode::epistemic: return "epistemic";
    case Mode::evid_d_only: return "evid_d_only";
    case Mode::evid_g_only: return "evid_g_only";
  }
  throw std::logic_error("unreachable");
}

Mode parse_mode(const std::string& name) {
  if (name == "standard") return Mode::standard;
  if (name == "epistemic") return Mode::epistemic;
  if (name == "evid_d_only") return Mode::evid_d_only;
  if (name == "evid_g_only") return Mode::evid_g_only;
  throw std::invalid_argument(
      "unknown mode '" + name +
      "' (expected standard|epistemic|evid_d_only|evid_g_only)");
}

bool mode_uses_belief_head(Mode mode) {
  return mode == Mode::epistemic || mode == Mode::evid_d_only;
}

bool mode_uses_dirichlet_generator(Mode mode) {
  return mode == Mode::epistemic || mode == Mode::evid_g_only;
}

double mean_violation(const BeliefPair& b) {
  const auto br = b.b_real.values();
  const auto bf = b.b_fake.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < br.size(); ++i)
    acc += std::max(0.0, br[i] + bf[i] - 1.0);
  return acc / static_cast<double>(br.size());
}

double mean_ignorance(const BeliefPair& b) {
  const auto br = b.b_real.values();
  const auto bf = b.b_fake.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < br.size(); ++i)
    acc += std::max(0.0, 1.0 - br[i] - bf[i]);
  return acc / static_cast<double>(br.size());
}

std::pair<double, double> interval_from_mass(double m1, double /*m2*/,
                                             double m3) {
  return {m1, m1 + m3};
}

Mlp::Mlp(std::size_t in_dim, const std::vector<std::size_t>& hidden,
         std::size_t out_dim, Rng& rng) {
  std::vector<std::size_t> widths;
  widths.push_back(in_dim);
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(out_dim);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l], fan_out = widths[l + 1];
    const double limit =
        std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::vector<double> w(fan_in * fan_out);
    for (double& v : w) v = rng.uniform(-limit, limit);
    ad::Tensor weight = ad::Tensor::from_values({fan_in, fan_out}, std::move(w),
                                                /*requires_grad=*/true);
    ad::Tensor bias = ad::Tensor::zeros({1, fan_out}, /*requires_grad=*/true);
    weights_.push_back(weight);
    biases_.push_back(bias);
  }
}

ad::Tensor Mlp::forward(const ad::Tensor& x) const {
  if (weights_.empty()) throw std::logic_error("Mlp::forward on empty net");
  ad::Tensor h = x;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    ad::Tensor lin = ad::matmul(h, weights_[l]);
    lin = ad::add(lin, ad::broadcast(biases_[l], lin.shape()));
    h = (l + 1 < weights_.size()) ? ad::tanh(lin) : lin;
  }
  return h;
}

std::vector<ad::Tensor> Mlp::params() const {
  std::vector<ad::Tensor> out;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(weights_[l]);
    out.push_back(biases_[l]);
  }
  return out;
}

void Mlp::append_named(
    const std::string& prefix,
    std::vector<std::pair<std::string, ad::Tensor>>& out) const {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.emplace_back(prefix + ".w" + std::to_string(l), weights_[l]);
    out.emplace_back(prefix + ".b" + std::to_string(l), biases_[l]);
  }
}

Discriminator::Discriminator(const NetConfig& config, Rng& rng) {
  if (config.hidden.empty())
    throw std::invalid_argument("Discriminator needs at least one hidden layer");
  std::vector<std::size_t> trunk_hidden(config.hidden.begin(),
                                        config.hidden.end() - 1);
  trunk_ = Mlp(config.data_dim, trunk_hidden, config.hidden.back(), rng);
  belief_head_ = mode_uses_belief_head(config.mode);
  head_ = Mlp(config.hidden.back(), {}, belief_head_ ? 2 : 1, rng);
}

BeliefPair Discriminator::discriminate(const ad::Tensor& x) const {
  ad::Tensor features = ad::tanh(trunk_.forward(x));
  ad::Tensor logits = head_.forward(features);
  if (belief_head_) {
    ad::Tensor s = ad::sigmoid(logits);
    return {ad::slice_cols(s, 0, 1), ad::slice_cols(s, 1, 2)};
  }
  ad::Tensor p = ad::sigmoid(logits);
  return {p, ad::add_scalar(ad::neg(p), 1.0)};
}

std::vector<ad::Tensor> Discriminator::params() const {
  std::vector<ad::Tensor> out = trunk_.params();
  for (auto& p : head_.params()) out.push_back(p);
  return out;
}

std::vector<std::pair<std::string, ad::Tensor>> Discriminator::named_params()
    const {
  std::vector<std::pair<std::string, ad::Tensor>> out;
  trunk_.append_named("d.trunk", out);
  head_.append_named("d.head", out);
  return out;
}

std::pair<MassSample, IntervalMap> sample_intervals(const DirichletField& field,
                                                    Rng& rng) {
  const std::size_t R = field.regions;
  const std::size_t batch = field.alphas.rows();
  const std::size_t cols = 3 * R;

  MassSample masses;
  masses.regions = R;
  masses.batch = batch;
  masses.m.resize(batch * cols);
  const auto av = field.alphas.values();
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t r = 0; r < R; ++r) {
      const auto s = rng.dirichlet3(av[b * cols + r], av[b * cols + R + r],
                                    av[b * cols + 2 * R + r]);
      masses.m[b * cols + r] = s[0];
      masses.m[b * cols + R + r] = s[1];
      masses.m[b * cols + 2 * R + r] = s[2];
    }
  }

  // Gradient path: Dirichlet mean. lo_mean = a1/a0, hi_mean = (a1+a3)/a0.
  ad::Tensor a1 = ad::slice_cols(field.alphas, 0, R);
  ad::Tensor a3 = ad::slice_cols(field.alphas, 2 * R, 3 * R);
  ad::Tensor a0 = ad::add(ad::add(a1, ad::slice_cols(field.alphas, R, 2 * R)),
                          a3);
  ad::Tensor lo_mean = ad::div(a1, a0);
  ad::Tensor hi_mean = ad::div(ad::add(a1, a3), a0);

  // Straight-through: forward values are the exact sampled (m1, m1+m3, m3)
  // so width = m3 bitwise; gradients route through the means unchanged.
  std::vector<double> lo_s(batch * R), hi_s(batch * R), width_s(batch * R);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t r = 0; r < R; ++r) {
      const double m1 = masses.m[b * cols + r];
      const double m3 = masses.m[b * cols + 2 * R + r];
      const auto [lo, hi] = interval_from_mass(m1, 0.0, m3);
      lo_s[b * R + r] = lo;
      hi_s[b * R + r] = hi;
      width_s[b * R + r] = m3;
    }
  }
  IntervalMap intervals;
  intervals.regions = R;
  intervals.lo = ad::straight_through(lo_mean, std::move(lo_s));
  intervals.hi = ad::straight_through(hi_mean, std::move(hi_s));
  intervals.width = ad::straight_through(ad::sub(hi_mean, lo_mean),
                                         std::move(width_s));
  return {std::move(masses), std::move(intervals)};
}

Generator::Generator(const NetConfig& config, Rng& rng) {
  dirichlet_ = mode_uses_dirichlet_generator(config.mode);
  regions_ = config.regions;
  if (dirichlet_) {
    // Split the hidden stack between the stages: first half predicts the
    // Dirichlet field, second half decodes the interval endpoints.
    const std::size_t split = (config.hidden.size() + 1) / 2;
    std::vector<std::size_t> h1(config.hidden.begin(),
                                config.hidden.begin() + split);
    std::vector<std::size_t> h2(config.hidden.begin() + split,
                                config.hidden.end());
    stage1_ = Mlp(config.latent_dim, h1, 3 * config.regions, rng);
    stage2_ = Mlp(2 * config.regions, h2, config.data_dim, rng);
  } else {
    plain_ = Mlp(config.latent_dim, config.hidden, config.data_dim, rng);
  }
}

DirichletField Generator::predict_mass(const ad::Tensor& z) const {
  if (!dirichlet_)
    throw std::logic_error("predict_mass on a plain-generator mode");
  ad::Tensor raw = stage1_.forward(z);
  DirichletField field;
  field.regions = regions_;
  field.alphas = ad::add_scalar(ad::softplus(raw), 1e-3);
  return field;
}

ad::Tensor Generator::construct(const IntervalMap& intervals) const {
  if (!dirichlet_)
    throw std::logic_error("construct on a plain-generator mode");
  ad::Tensor endpoints = ad::concat_cols(intervals.lo, intervals.hi);
  return ad::tanh(stage2_.forward(endpoints));
}

GenOutput Generator::generate(const ad::Tensor& z, Rng& rng) const {
  GenOutput out;
  if (!dirichlet_) {
    out.sample = ad::tanh(plain_.forward(z));
    return out;
  }
  out.field = predict_mass(z);
  auto [masses, intervals] = sample_intervals(out.field, rng);
  out.masses = std::move(masses);
  out.intervals = std::move(intervals);
  out.sample = construct(out.intervals);
  return out;
}

std::vector<ad::Tensor> Generator::params() const {
  if (!dirichlet_) return plain_.params();
  std::vector<ad::Tensor> out = stage1_.params();
  for (auto& p : stage2_.params()) out.push_back(p);
  return out;
}

std::vector<std::pair<std::string, ad::Tensor>> Generator::named_params()
    const {
  std::vector<std::pair<std::string, ad::Tensor>> out;
  if (!dirichlet_) {
    plain_.append_named("g.net", out);
  } else {
    stage1_.append_named("g.stage1", out);
    stage2_.append_named("g.stage2", out);
  }
  return out;
}

ad::Tensor sample_latent(std::size_t batch, std::size_t latent_dim, Rng& rng) {
  std::vector<double> z(batch * latent_dim);
  for (double& v : z) v = rng.normal();
  return ad::Tensor::from_values({batch, latent_dim}, std::move(z));
}

}  // namespace egan::nets
