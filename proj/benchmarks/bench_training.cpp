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
#include <utility>
#include <vector>

#include "egan/losses.hpp"
#include "egan/networks.hpp"
#include "egan/optim.hpp"
#include "egan/rng.hpp"
#include "egan/tensor.hpp"

namespace ad = egan::ad;
namespace nets = egan::nets;
namespace losses = egan::losses;
using egan::Rng;

namespace {

struct Setup {
  nets::NetConfig cfg;
  nets::Discriminator disc;
  nets::Generator gen;
  ad::Adam d_opt;
  ad::Adam g_opt;
  Rng rng;

  Setup(nets::Mode mode, std::size_t width, Rng init)
      : cfg{2, 32, {width, width}, 16, mode},
        disc(cfg, init),
        gen(cfg, init),
        d_opt(disc.params()),
        g_opt(gen.params()),
        rng(99) {}
};

ad::Tensor real_batch(std::size_t batch, Rng& rng) {
  std::vector<double> v(batch * 2);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return ad::Tensor::from_values({batch, 2}, v);
}

// Mirrors one alternating discriminator + generator update.
void step(Setup& s, const ad::Tensor& real, const losses::LossWeights& w) {
  const std::size_t batch = real.rows();
  {
    ad::Tensor z = nets::sample_latent(batch, s.cfg.latent_dim, s.rng);
    nets::GenOutput fake = s.gen.generate(z, s.rng);
    ad::Graph graph;
    ad::GraphScope scope(graph);
    s.d_opt.zero_grad();
    nets::BeliefPair real_pair = s.disc.discriminate(real);
    nets::BeliefPair fake_pair = s.disc.discriminate(fake.sample);
    auto report = s.disc.belief_head()
                      ? losses::discriminator_loss(real_pair, fake_pair, w)
                      : losses::standard_discriminator_loss(real_pair,
                                                            fake_pair);
    graph.backward(report.total_tensor);
    s.d_opt.step();
  }
  {
    ad::Graph graph;
    ad::GraphScope scope(graph);
    s.g_opt.zero_grad();
    ad::Tensor z = nets::sample_latent(batch, s.cfg.latent_dim, s.rng);
    nets::GenOutput out = s.gen.generate(z, s.rng);
    nets::BeliefPair fake_pair = s.disc.discriminate(out.sample);
    auto report = s.cfg.mode == nets::Mode::standard
                      ? losses::standard_generator_loss(fake_pair)
                      : losses::generator_loss(fake_pair, out.field,
                                               out.intervals, w);
    graph.backward(report.total_tensor);
    s.g_opt.step();
  }
}

void TrainStep(benchmark::State& state, nets::Mode mode) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const auto batch = static_cast<std::size_t>(state.range(1));
  Setup s(mode, width, Rng(7));
  Rng data_rng(5);
  const ad::Tensor real = real_batch(batch, data_rng);
  const losses::LossWeights w;
  for (auto _ : state) step(s, real, w);
}

void TrainStepStandard(benchmark::State& state) {
  TrainStep(state, nets::Mode::standard);
}
void TrainStepEpistemic(benchmark::State& state) {
  TrainStep(state, nets::Mode::epistemic);
}

BENCHMARK(TrainStepStandard)
    ->Args({64, 64})
    ->Args({128, 128})
    ->Args({256, 128});
BENCHMARK(TrainStepEpistemic)
    ->Args({64, 64})
    ->Args({128, 128})
    ->Args({256, 128});

}  // namespace
