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

#include <benchmark/benchmark.h>

#include <cstddef>

#include "egan/metrics.hpp"
#include "egan/rng.hpp"

namespace metrics = egan::metrics;
using egan::Rng;

namespace {

metrics::SampleSet cloud(std::size_t n, std::size_t dim, Rng& rng) {
  metrics::SampleSet s;
  s.n = n;
  s.dim = dim;
  s.points.resize(n * dim);
  for (double& x : s.points) x = rng.normal();
  return s;
}

// Dominated by the n x n kernel eigendecomposition.
void VendiScore(benchmark::State& state) {
  Rng rng(23);
  const auto s = cloud(static_cast<std::size_t>(state.range(0)), 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::vendi_score(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(VendiScore)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void FitAndFrechet(benchmark::State& state) {
  Rng rng(29);
  const auto a = cloud(static_cast<std::size_t>(state.range(0)), 2, rng);
  const auto b = cloud(static_cast<std::size_t>(state.range(0)), 2, rng);
  for (auto _ : state) {
    const auto ga = metrics::fit_gaussian(a);
    const auto gb = metrics::fit_gaussian(b);
    benchmark::DoNotOptimize(metrics::frechet_distance(ga, gb));
  }
}
BENCHMARK(FitAndFrechet)->Arg(1000)->Arg(5000);

// High-dimensional path includes the random projection embedding.
void FitGaussianProjected(benchmark::State& state) {
  Rng rng(31);
  const auto s = cloud(2048, 256, rng);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::fit_gaussian(s));
}
BENCHMARK(FitGaussianProjected);

}  // namespace
