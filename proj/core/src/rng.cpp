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

#include "egan/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace egan {

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // rejection sampling to avoid modulo bias
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    // boost: gamma(a) = gamma(a+1) * u^(1/a)
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::log_gamma_draw(double shape) {
  if (!(shape > 0.0))
    throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    // log of: gamma(shape + 1) * u^(1/shape). The log form survives shapes
    // where the power factor underflows linear doubles.
    const double u = std::max(uniform(), 0x1.0p-53);
    return std::log(gamma(shape + 1.0)) + std::log(u) / shape;
  }
  return std::log(gamma(shape));
}

std::array<double, 3> Rng::dirichlet3(double a1, double a2, double a3) {
  const std::array<double, 3> lg = {log_gamma_draw(a1), log_gamma_draw(a2),
                                    log_gamma_draw(a3)};
  const double top = std::max({lg[0], lg[1], lg[2]});
  const double g1 = std::exp(lg[0] - top);
  const double g2 = std::exp(lg[1] - top);
  const double g3 = std::exp(lg[2] - top);
  const double total = g1 + g2 + g3;
  return {g1 / total, g2 / total, g3 / total};
}

std::uint64_t Rng::fork_seed(std::uint64_t stream) const {
  // splitmix64 of the stream id, xor'd into the base seed so sibling
  // streams decorrelate
  std::uint64_t z = stream + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return base_seed_ ^ z;
}

Rng Rng::fork(std::uint64_t stream) const { return Rng(fork_seed(stream)); }

}  // namespace egan
