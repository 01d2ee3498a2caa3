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
#include <cstdint>
#include <random>

namespace egan {

/// Seeded PRNG with fixed, self-contained sampling algorithms.
///
/// The engine is std::mt19937_64 (bit-exact across platforms by the C++
/// standard). All distribution transforms are implemented here rather than
/// delegated to <random> distributions, whose algorithms are
/// implementation-defined:
///   - uniform():  53-bit mantissa construction, value in [0, 1)
///   - normal():   Marsaglia polar method with one cached spare
///   - gamma():    Marsaglia-Tsang squeeze, with the u^(1/a) boost for
///                 shape < 1
///   - dirichlet3(): three gamma(alpha_k, 1) draws normalized to the simplex
///
/// Given the same seed, a Rng therefore produces the same stream of doubles
/// on every build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), base_seed_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal draw.
  double normal();

  /// Gamma(shape, 1) draw, shape > 0. Tiny shapes underflow to subnormals or
  /// zero in linear scale; dirichlet3 combines draws in log space instead.
  double gamma(double shape);

  /// Dirichlet(alpha) draw on the 2-simplex. Robust to tiny concentrations:
  /// components are drawn in log space, so the normalization never hits 0/0.
  std::array<double, 3> dirichlet3(double a1, double a2, double a3);

  /// Fisher-Yates shuffle of an index permutation.
  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      auto j = uniform_index(i);
      std::swap(first[i - 1], first[j]);
    }
  }

  /// Derives an independent child stream, e.g. one per ablation cell.
  Rng fork(std::uint64_t stream) const;

  /// Seed of the child stream fork(stream) would produce.
  std::uint64_t fork_seed(std::uint64_t stream) const;

 private:
  /// log of a Gamma(shape, 1) draw; finite even where the linear-scale draw
  /// would underflow.
  double log_gamma_draw(double shape);

  std::mt19937_64 engine_;
  std::uint64_t base_seed_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace egan
