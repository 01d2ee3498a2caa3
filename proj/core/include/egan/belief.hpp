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

#include <cstdint>
#include <map>
#include <vector>

namespace egan::ds {

/// Finite frame of discernment. Subsets are addressed by bitmask in
/// [0, 2^size). The cap of 20 atoms keeps dense subset enumeration exact
/// and cheap (2^20 doubles).
struct Frame {
  int size = 0;

  explicit Frame(int n);
  std::uint32_t full_set() const { return (1u << size) - 1u; }
  std::uint32_t subset_count() const { return 1u << size; }

  static constexpr int kMaxSize = 20;
};

/// Mass assignment over subsets of a frame: every mass is nonnegative, the
/// empty set carries none, and the total is 1 (within 1e-9).
class MassFunction {
 public:
  MassFunction(Frame frame, std::map<std::uint32_t, double> masses);

  const Frame& frame() const { return frame_; }
  const std::map<std::uint32_t, double>& masses() const { return masses_; }
  double mass(std::uint32_t subset) const;

  /// Mass on the whole frame concentrated at Theta (total ignorance).
  static MassFunction vacuous(Frame frame);

  static constexpr double kSumTolerance = 1e-9;

 private:
  Frame frame_;
  std::map<std::uint32_t, double> masses_;
};

/// Belief values for every subset of a frame, dense by bitmask.
/// Bel(empty) = 0, Bel(Theta) = 1, monotone under subset inclusion.
class BeliefFunction {
 public:
  BeliefFunction(Frame frame, std::vector<double> values);

  const Frame& frame() const { return frame_; }
  double value(std::uint32_t subset) const { return values_[subset]; }
  const std::vector<double>& values() const { return values_; }

 private:
  Frame frame_;
  std::vector<double> values_;
};

/// Bel(A) = sum of m(B) over all B subset of A.
BeliefFunction belief_from_mass(const MassFunction& m);

/// Moebius inversion: m(A) = sum over B subset of A of (-1)^|A\B| Bel(B).
/// Recovered masses in [-1e-9, 0) are clamped to 0 and the result is
/// renormalized; anything below -1e-9 means the input was not a valid
/// belief function and raises std::invalid_argument.
MassFunction mass_from_belief(const BeliefFunction& bel);

/// A closed interval in [0,1] acting as a focal element of a continuous
/// belief function.
struct BorelInterval {
  double lo = 0.0;
  double hi = 0.0;

  BorelInterval(double lo, double hi);
};

/// Mass density over Borel intervals, discretized on a uniform grid over
/// the triangle {0 <= a <= b <= 1}. `resolution` counts grid cells per
/// axis, so nodes sit at k/resolution for k in [0, resolution]; density is
/// stored per node, row-major in (a, b), zero wherever a > b, and is
/// normalized so the iterated trapezoidal integral over the triangle is 1.
class ContinuousMassDensity {
 public:
  /// `node_density(a, b)` is evaluated on every grid node; values below
  /// the diagonal are forced to zero and the surface is normalized.
  template <typename F>
  static ContinuousMassDensity from_function(int resolution, F&& node_density) {
    std::vector<double> d;
    const int n = resolution + 1;
    d.reserve(static_cast<std::size_t>(n) * n);
    const double h = 1.0 / resolution;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d.push_back(i <= j ? node_density(i * h, j * h) : 0.0);
    return ContinuousMassDensity(resolution, std::move(d));
  }

  /// Uniform density over the triangle (constant 2 before normalization).
  static ContinuousMassDensity uniform(int resolution);

  ContinuousMassDensity(int resolution, std::vector<double> node_values);

  int resolution() const { return resolution_; }
  double node(int i, int j) const {
    return density_[static_cast<std::size_t>(i) * (resolution_ + 1) + j];
  }

  static constexpr double kNormTolerance = 1e-6;

 private:
  int resolution_;
  std::vector<double> density_;
};

/// Bel([c,d]) = integral of the density over focal intervals [a,b] with
/// c <= a <= b <= d, via the iterated trapezoidal rule (exact for densities
/// linear in each variable over the triangle). Query endpoints are snapped
/// to the nearest grid node.
double continuous_belief(const ContinuousMassDensity& density,
                         const BorelInterval& query);

}  // namespace egan::ds
