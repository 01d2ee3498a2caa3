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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "egan/config.hpp"
#include "egan/data.hpp"
#include "egan/losses.hpp"
#include "egan/metrics.hpp"
#include "egan/networks.hpp"
#include "egan/optim.hpp"
#include "egan/serialize.hpp"

namespace egan::harness {

struct TrainConfig {
  /// Registered dataset name or a CSV path.
  std::string dataset = "ring8";
  nets::Mode mode = nets::Mode::epistemic;
  losses::LossWeights weights;
  std::size_t epochs = 5;
  /// Generator steps; 0 derives the budget (20000 on the mixture datasets,
  /// epochs * batches_per_epoch otherwise).
  std::size_t steps = 0;
  std::size_t batch_size = 128;
  ad::AdamConfig adam;
  std::uint64_t seed = 7;
  std::size_t eval_every = 2000;
  std::size_t sample_count = 5000;
  /// Vendi needs an n^3 eigendecomposition, so it gets its own sample cap.
  std::size_t vendi_count = 1000;
  std::size_t dataset_size = 20000;
  std::size_t latent_dim = 32;
  std::vector<std::size_t> hidden = {64, 64};
  std::size_t regions = 16;
  /// Empty: train in memory only, no artifacts.
  std::filesystem::path out_dir;

  void validate() const;
  io::KeyValueConfig to_kv() const;
  static TrainConfig from_kv(const io::KeyValueConfig& kv);
};

struct RunResult {
  metrics::MetricsReport report;
  double reference_vendi = 0.0;
  std::filesystem::path run_dir;
  std::filesystem::path losses_csv;
  std::filesystem::path checkpoint_manifest;
  double seconds_per_epoch = 0.0;
  std::uint64_t seed = 0;
  std::size_t steps_run = 0;
};

/// Alternating one-discriminator-step-one-generator-step training with
/// periodic evaluation. Deterministic given the seed; all wall-clock output
/// goes to timing.txt so CSVs are byte-stable. Throws on non-finite losses.
RunResult train(const TrainConfig& config);

struct EvalResult {
  metrics::MetricsReport report;
  double reference_vendi = 0.0;
};

/// Restores the generator from a checkpoint and scores `sample_count` draws
/// against the dataset (which must match the checkpoint's data_dim).
EvalResult evaluate(const std::filesystem::path& checkpoint_manifest,
                    const data::Dataset& dataset, std::size_t sample_count,
                    std::size_t vendi_count = 1000, std::uint64_t seed = 0);

/// Rebuilds a generator (and its NetConfig) from checkpoint metadata.
std::pair<nets::Generator, nets::NetConfig> load_generator(
    const io::Checkpoint& ckpt);

/// Rebuilds the saved discriminator the same way.
std::pair<nets::Discriminator, nets::NetConfig> load_discriminator(
    const io::Checkpoint& ckpt);

enum class GridKind { beta_gamma, lambda, arch };

GridKind parse_grid(const std::string& name);
std::string grid_name(GridKind kind);

struct AblationCell {
  std::string row_label;
  std::string col_label;
  double fd_median = 0.0;
  double vendi_median = 0.0;
  std::size_t seeds_ok = 0;
  std::size_t seeds_total = 0;
  bool failed = false;  // no seed of this cell finished
};

struct AblationResult {
  GridKind kind;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<AblationCell> cells;  // row-major
  std::filesystem::path csv_path;
};

/// Runs every grid cell for every seed on a bounded worker pool and writes
/// ablation.csv with the grid's row/column structure. Per-cell failures are
/// marked, not fatal. Cell runs keep no artifacts.
AblationResult ablate(const TrainConfig& base, GridKind kind,
                      const std::vector<std::uint64_t>& seeds,
                      const std::filesystem::path& out_dir,
                      std::size_t workers = 0);

struct BenchResult {
  double standard_seconds_per_epoch = 0.0;
  double epistemic_seconds_per_epoch = 0.0;
  double overhead_ratio = 0.0;  // epistemic / standard
  std::size_t steps_per_epoch = 0;
};

/// Times identical training loops in standard and epistemic mode (no
/// evaluation, no artifacts) and reports seconds per epoch for both.
BenchResult bench(const TrainConfig& base, std::size_t epochs);

/// Builds a registered dataset, or loads a CSV when the name ends in ".csv".
data::Dataset make_dataset(const std::string& name, std::size_t n,
                           std::uint64_t seed);

}  // namespace egan::harness
