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

#include "egan/rng.hpp"

using egan::Rng;

namespace {

void NormalDraw(benchmark::State& state) {
  Rng rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(NormalDraw);

// shape < 1 exercises the boost path, shape >= 1 the plain squeeze.
void GammaDraw(benchmark::State& state) {
  Rng rng(13);
  const double shape = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(rng.gamma(shape));
}
BENCHMARK(GammaDraw)->Arg(5)->Arg(70)->Arg(300);

void Dirichlet3Draw(benchmark::State& state) {
  Rng rng(17);
  const double a = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    auto s = rng.dirichlet3(a, a, a);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(Dirichlet3Draw)->Arg(1)->Arg(100)->Arg(500);

}  // namespace
