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

#include "egan/belief.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace egan::ds {

Frame::Frame(int n) : size(n) {
  if (n < 1 || n > kMaxSize)
    throw std::invalid_argument("Frame size must be in [1, " +
                                std::to_string(kMaxSize) + "], got " +
                                std::to_string(n));
}

MassFunction::MassFunction(Frame frame, std::map<std::uint32_t, double> masses)
    : frame_(frame), masses_(std::move(masses)) {
  double total = 0.0;
  for (const auto& [subset, value] : masses_) {
    if (subset > frame_.full_set())
      throw std::invalid_argument("mass subset out of frame range");
    if (subset == 0 && value != 0.0)
      throw std::invalid_argument("mass on the empty set must be 0");
    if (value < 0.0)
      throw std::invalid_argument("masses must be nonnegative");
    total += value;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw std::invalid_argument("masses must sum to 1, got " +
                                std::to_string(total));
}

double MassFunction::mass(std::uint32_t subset) const {
  auto it = masses_.find(subset);
  return it == masses_.end() ? 0.0 : it->second;
}

MassFunction MassFunction::vacuous(Frame frame) {
  return MassFunction(frame, {{frame.full_set(), 1.0}});
}

BeliefFunction::BeliefFunction(Frame frame, std::vector<double> values)
    : frame_(frame), values_(std::move(values)) {
  if (values_.size() != frame_.subset_count())
    throw std::invalid_argument("belief table size must be 2^frame_size");
}

BeliefFunction belief_from_mass(const MassFunction& m) {
  const std::uint32_t n = m.frame().subset_count();
  std::vector<double> bel(n, 0.0);
  for (const auto& [subset, value] : m.masses()) bel[subset] = value;
  // zeta transform: subset-sum over each atom in turn
  for (int bit = 0; bit < m.frame().size; ++bit) {
    const std::uint32_t mask = 1u << bit;
    for (std::uint32_t a = 0; a < n; ++a)
      if (a & mask) bel[a] += bel[a ^ mask];
  }
  return BeliefFunction(m.frame(), std::move(bel));
}

MassFunction mass_from_belief(const BeliefFunction& bel) {
  const std::uint32_t n = bel.frame().subset_count();
  std::vector<double> m(bel.values());
  // Moebius transform: inverse of the subset-sum, atom by atom
  for (int bit = 0; bit < bel.frame().size; ++bit) {
    const std::uint32_t mask = 1u << bit;
    for (std::uint32_t a = 0; a < n; ++a)
      if (a & mask) m[a] -= m[a ^ mask];
  }

  std::map<std::uint32_t, double> masses;
  double total = 0.0;
  for (std::uint32_t a = 1; a < n; ++a) {
    if (m[a] < -MassFunction::kSumTolerance)
      throw std::invalid_argument(
          "input is not a valid belief function: recovered mass " +
          std::to_string(m[a]) + " on subset " + std::to_string(a));
    if (m[a] <= 0.0) continue;  // clamp float noise in [-1e-9, 0)
    masses[a] = m[a];
    total += m[a];
  }
  if (total <= 0.0)
    throw std::invalid_argument("belief function recovers no mass");
  for (auto& [subset, value] : masses) value /= total;
  return MassFunction(bel.frame(), std::move(masses));
}

BorelInterval::BorelInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (lo < 0.0 || hi > 1.0)
    throw std::invalid_argument("BorelInterval must lie within [0,1]");
  if (lo > hi)
    throw std::invalid_argument("BorelInterval requires lo <= hi");
}

namespace {

// Iterated trapezoidal integral of the density over
// {(a,b): a in [nodes i0..i1], b in [max(a, lo), node i1]}.
// Exact for densities linear in each variable; O(h^2) otherwise.
double triangle_integral(const ContinuousMassDensity& d, int i0, int i1) {
  if (i1 <= i0) return 0.0;
  const double h = 1.0 / d.resolution();
  // inner pass: g(a_i) = trapezoid over b in [a_i, b_max]
  std::vector<double> g(i1 - i0 + 1, 0.0);
  for (int i = i0; i <= i1; ++i) {
    double inner = 0.0;
    for (int j = i; j <= i1; ++j) {
      const double w = (j == i || j == i1) ? 0.5 : 1.0;
      inner += w * d.node(i, j);
    }
    g[i - i0] = (i == i1) ? 0.0 : inner * h;
  }
  double outer = 0.0;
  for (int i = i0; i <= i1; ++i) {
    const double w = (i == i0 || i == i1) ? 0.5 : 1.0;
    outer += w * g[i - i0];
  }
  return outer * h;
}

}  // namespace

ContinuousMassDensity::ContinuousMassDensity(int resolution,
                                             std::vector<double> node_values)
    : resolution_(resolution), density_(std::move(node_values)) {
  if (resolution_ < 2)
    throw std::invalid_argument("resolution must be at least 2");
  const std::size_t n = static_cast<std::size_t>(resolution_) + 1;
  if (density_.size() != n * n)
    throw std::invalid_argument("density grid must be (resolution+1)^2");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = density_[i * n + j];
      if (!(v >= 0.0))
        throw std::invalid_argument("density must be nonnegative and finite");
      if (i > j && v != 0.0)
        throw std::invalid_argument("density must vanish below the diagonal");
    }
  const double total = triangle_integral(*this, 0, resolution_);
  if (total <= 0.0)
    throw std::invalid_argument("density integrates to zero");
  for (double& v : density_) v /= total;
}

ContinuousMassDensity ContinuousMassDensity::uniform(int resolution) {
  return from_function(resolution, [](double, double) { return 2.0; });
}

double continuous_belief(const ContinuousMassDensity& density,
                         const BorelInterval& query) {
  const int res = density.resolution();
  const int i0 = static_cast<int>(std::lround(query.lo * res));
  const int i1 = static_cast<int>(std::lround(query.hi * res));
  return triangle_integral(density, i0, i1);
}

}  // namespace egan::ds
