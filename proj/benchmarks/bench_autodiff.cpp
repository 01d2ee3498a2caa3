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
#include <vector>

#include "egan/ops.hpp"
#include "egan/rng.hpp"
#include "egan/tensor.hpp"

namespace ad = egan::ad;
using egan::Rng;

namespace {

ad::Tensor random_tensor(std::size_t rows, std::size_t cols, Rng& rng,
                         bool requires_grad = false) {
  std::vector<double> v(rows * cols);
  for (double& x : v) x = rng.normal();
  return ad::Tensor::from_values({rows, cols}, v, requires_grad);
}

void MatmulForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const ad::Tensor a = random_tensor(n, n, rng);
  const ad::Tensor b = random_tensor(n, n, rng);
  for (auto _ : state) {
    ad::Tensor c = ad::matmul(a, b);
    benchmark::DoNotOptimize(c.values().data());
  }
  state.SetComplexityN(static_cast<benchmark::ComplexityN>(n));
}
BENCHMARK(MatmulForward)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void MatmulForwardBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  ad::Tensor a = random_tensor(n, n, rng, true);
  ad::Tensor b = random_tensor(n, n, rng, true);
  for (auto _ : state) {
    ad::Graph graph;
    ad::GraphScope scope(graph);
    ad::Tensor loss = ad::mean(ad::matmul(a, b));
    graph.backward(loss);
    benchmark::DoNotOptimize(a.grad().data());
  }
  state.SetComplexityN(static_cast<benchmark::ComplexityN>(n));
}
BENCHMARK(MatmulForwardBackward)
    ->RangeMultiplier(2)
    ->Range(16, 256)
    ->Complexity();

// One affine-tanh layer chain of the shape the models use, batch 128.
void MlpLikeChainBackward(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const std::size_t batch = 128;
  Rng rng(3);
  ad::Tensor x = random_tensor(batch, width, rng);
  ad::Tensor w1 = random_tensor(width, width, rng, true);
  ad::Tensor w2 = random_tensor(width, 1, rng, true);
  for (auto _ : state) {
    ad::Graph graph;
    ad::GraphScope scope(graph);
    ad::Tensor h = ad::tanh(ad::matmul(x, w1));
    ad::Tensor loss = ad::mean(ad::sigmoid(ad::matmul(h, w2)));
    graph.backward(loss);
    benchmark::DoNotOptimize(w1.grad().data());
  }
}
BENCHMARK(MlpLikeChainBackward)->Arg(64)->Arg(128)->Arg(256);

}  // namespace
