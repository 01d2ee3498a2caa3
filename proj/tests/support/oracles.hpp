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

// Independent reference implementations used to cross-check the library.
// Everything here favors transparency over speed and shares no numerical
// code paths with core; each oracle is a from-scratch restatement of the
// quantity under test.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "egan/tensor.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Belief calculus

/// Bel(A) as an explicit loop over focal elements: sum m(B) for B subset of A.
inline double belief_subset_sum(const std::map<std::uint32_t, double>& masses,
                                std::uint32_t subset) {
  double total = 0.0;
  for (const auto& [focal, m] : masses)
    if (focal != 0 && (focal & ~subset) == 0) total += m;
  return total;
}

/// Midpoint-rule integral of `density(a, b)` over {c <= a <= b <= d} with an
/// n x n cell grid. First-order accurate at the diagonal; use large n.
template <typename F>
double triangle_integral(F&& density, double c, double d, int n) {
  const double h = (d - c) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = c + (i + 0.5) * h;
    for (int j = i; j < n; ++j) {
      const double b = c + (j + 0.5) * h;
      if (a <= b) acc += density(a, b);
    }
  }
  return acc * h * h;
}

// ---------------------------------------------------------------------------
// Numerics

/// Relative error with an absolute floor near zero.
inline double rel_err(double got, double want, double zero_floor = 1e-6) {
  const double mag = std::max(std::abs(got), std::abs(want));
  if (mag < zero_floor) return std::abs(got - want);
  return std::abs(got - want) / mag;
}

/// Principal square root of a symmetric PSD matrix by the coupled
/// Newton-Schulz iteration (inverse-free, trace-scaled). No eigensolver.
inline Eigen::MatrixXd newton_schulz_sqrt(const Eigen::MatrixXd& a,
                                          int iters = 120) {
  const Eigen::Index n = a.rows();
  const double c = a.trace();
  if (c <= 0.0) return Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd y = a / c;
  Eigen::MatrixXd z = id;
  for (int k = 0; k < iters; ++k) {
    const Eigen::MatrixXd t = 0.5 * (3.0 * id - z * y);
    y = y * t;
    z = t * z;
  }
  return std::sqrt(c) * y;
}

/// Gaussian Frechet distance restated with the Newton-Schulz root.
inline double frechet_reference(const Eigen::VectorXd& mu_a,
                                const Eigen::MatrixXd& cov_a,
                                const Eigen::VectorXd& mu_b,
                                const Eigen::MatrixXd& cov_b) {
  const Eigen::MatrixXd s1 = newton_schulz_sqrt(cov_a);
  Eigen::MatrixXd m = s1 * cov_b * s1;
  m = 0.5 * (m + m.transpose().eval());
  const Eigen::MatrixXd mid = newton_schulz_sqrt(m);
  return (mu_a - mu_b).squaredNorm() + cov_a.trace() + cov_b.trace() -
         2.0 * mid.trace();
}

// ---------------------------------------------------------------------------
// Dirichlet closed forms

inline std::array<double, 3> dirichlet_mean(double a1, double a2, double a3) {
  const double a0 = a1 + a2 + a3;
  return {a1 / a0, a2 / a0, a3 / a0};
}

inline std::array<double, 3> dirichlet_variance(double a1, double a2,
                                                double a3) {
  const double a0 = a1 + a2 + a3;
  const double d = a0 * a0 * (a0 + 1.0);
  return {a1 * (a0 - a1) / d, a2 * (a0 - a2) / d, a3 * (a0 - a3) / d};
}

// ---------------------------------------------------------------------------
// Scalar loss restatements (plain doubles, no tensors, no autodiff)

inline double clamp_unit(double v) {
  return std::min(std::max(v, 1e-6), 1.0 - 1e-6);
}

struct LossRef {
  double adversarial = 0.0;
  double constraint = 0.0;
  double variance = 0.0;
  double width = 0.0;
  double total = 0.0;
};

/// Evidential discriminator objective on raw belief values.
inline LossRef discriminator_loss_reference(
    const std::vector<double>& real_br, const std::vector<double>& real_bf,
    const std::vector<double>& fake_br, const std::vector<double>& fake_bf,
    double lambda) {
  const auto n_real = static_cast<double>(real_br.size());
  const auto n_fake = static_cast<double>(fake_br.size());
  LossRef r;
  double adv = 0.0, hinge_real = 0.0, hinge_fake = 0.0;
  for (std::size_t i = 0; i < real_br.size(); ++i) {
    adv -= (std::log(clamp_unit(real_br[i])) +
            std::log(clamp_unit(1.0 - real_bf[i]))) /
           n_real;
    hinge_real += std::max(0.0, real_br[i] + real_bf[i] - 1.0) / n_real;
  }
  for (std::size_t i = 0; i < fake_br.size(); ++i) {
    adv -= (std::log(clamp_unit(fake_bf[i])) +
            std::log(clamp_unit(1.0 - fake_br[i]))) /
           n_fake;
    hinge_fake += std::max(0.0, fake_br[i] + fake_bf[i] - 1.0) / n_fake;
  }
  r.adversarial = adv;
  r.constraint = hinge_real + hinge_fake;
  r.total = adv + lambda * r.constraint;
  return r;
}

/// Evidential generator objective; `alphas` is [batch x 3R] component-major
/// (columns r, R+r, 2R+r hold the triple of region r).
inline LossRef generator_loss_reference(const std::vector<double>& fake_br,
                                        const std::vector<double>& fake_bf,
                                        const std::vector<double>& alphas,
                                        std::size_t regions, double lambda,
                                        double beta, double gamma) {
  (void)lambda;  // the hinge lives in the discriminator objective
  const auto n = static_cast<double>(fake_br.size());
  LossRef r;
  for (std::size_t i = 0; i < fake_br.size(); ++i)
    r.adversarial -= (std::log(clamp_unit(fake_br[i])) +
                      std::log(clamp_unit(1.0 - fake_bf[i]))) /
                     n;
  if (regions > 0 && !alphas.empty()) {
    const std::size_t cols = 3 * regions;
    const std::size_t batch = alphas.size() / cols;
    double var_acc = 0.0, width_acc = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t j = 0; j < regions; ++j) {
        const double a1 = alphas[b * cols + j];
        const double a2 = alphas[b * cols + regions + j];
        const double a3 = alphas[b * cols + 2 * regions + j];
        const auto v = dirichlet_variance(a1, a2, a3);
        var_acc += v[0] + v[1] + v[2];
        width_acc += a3 / (a1 + a2 + a3);
      }
    }
    const double cells = static_cast<double>(batch * regions);
    // Spread is rewarded: the variance trace enters the minimized total
    // negated.
    r.variance = -var_acc / cells;
    r.width = width_acc / cells;
  }
  r.total = r.adversarial + beta * r.variance + gamma * r.width;
  return r;
}

inline double standard_d_reference(const std::vector<double>& p_real,
                                   const std::vector<double>& p_fake) {
  double acc = 0.0;
  for (double p : p_real)
    acc -= std::log(clamp_unit(p)) / static_cast<double>(p_real.size());
  for (double p : p_fake)
    acc -= std::log(clamp_unit(1.0 - p)) / static_cast<double>(p_fake.size());
  return acc;
}

inline double standard_g_reference(const std::vector<double>& p_fake) {
  double acc = 0.0;
  for (double p : p_fake)
    acc -= std::log(clamp_unit(p)) / static_cast<double>(p_fake.size());
  return acc;
}

// ---------------------------------------------------------------------------
// Finite-difference gradient checking

struct GradCheckResult {
  double max_rel_err = 0.0;
  std::size_t checked = 0;
};

/// Compares backward() gradients of build() against central differences on
/// every coordinate of every leaf. build() must be a pure function of the
/// leaves' current values returning a scalar tensor.
template <typename Build>
GradCheckResult check_gradients(std::vector<egan::ad::Tensor> leaves,
                                Build&& build, double h = 1e-5) {
  namespace ad = egan::ad;
  std::vector<std::vector<double>> analytic;
  {
    ad::Graph graph;
    ad::GraphScope scope(graph);
    for (auto& leaf : leaves) leaf.zero_grad();
    ad::Tensor root = build();
    graph.backward(root);
    for (auto& leaf : leaves) {
      if (!leaf.has_grad())
        throw std::logic_error("gradient check: leaf missing gradient");
      analytic.emplace_back(leaf.grad().begin(), leaf.grad().end());
    }
  }
  GradCheckResult result;
  for (std::size_t li = 0; li < leaves.size(); ++li) {
    auto vals = leaves[li].values_mut();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double saved = vals[i];
      vals[i] = saved + h;
      const double up = build().item();
      vals[i] = saved - h;
      const double dn = build().item();
      vals[i] = saved;
      const double fd = (up - dn) / (2.0 * h);
      result.max_rel_err =
          std::max(result.max_rel_err, rel_err(analytic[li][i], fd));
      ++result.checked;
    }
  }
  return result;
}

}  // namespace oracle
