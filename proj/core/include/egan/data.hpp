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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "egan/rng.hpp"
#include "egan/tensor.hpp"

namespace egan::data {

/// Isotropic Gaussian mixture with a shared standard deviation.
struct GaussianMixtureSpec {
  std::vector<std::vector<double>> means;
  double sigma = 0.0;
  std::vector<double> weights;

  std::size_t dim() const { return means.empty() ? 0 : means[0].size(); }
  std::size_t modes() const { return means.size(); }
  /// Throws unless weights are nonnegative and sum to 1 within 1e-9 and
  /// sigma > 0.
  void validate() const;
  /// Draws n points (component by weight, then mean + sigma * normal).
  std::vector<double> sample(std::size_t n, Rng& rng) const;
  /// Same mixture with every coordinate and sigma divided by `scale`.
  GaussianMixtureSpec scaled(double scale) const;
};

/// 8 modes on a radius-2 circle, sigma 0.05, uniform weights.
GaussianMixtureSpec ring8();
/// 5x5 grid over [-4,4]^2, sigma 0.05, uniform weights.
GaussianMixtureSpec grid25();

/// In-memory dataset, already normalized into [-1,1]^dim via
/// normalized = clamp((raw - center[d]) / half_range[d]).
struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<double> points;
  std::vector<double> center;
  std::vector<double> half_range;
  /// Ground-truth mixture in normalized coordinates, when known.
  std::optional<GaussianMixtureSpec> normalized_mixture;

  const double* row(std::size_t i) const { return points.data() + i * dim; }
};

/// Draws n mixture samples and normalizes them with the given symmetric
/// half-range (center 0). The normalized mixture is attached for coverage.
Dataset mixture_dataset(const std::string& name,
                        const GaussianMixtureSpec& spec, std::size_t n,
                        double half_range, Rng& rng);

/// Procedural 16x16 grayscale shapes (horizontal bar, vertical bar, filled
/// rectangle, disc), flattened to 256 pixels valued in {-1, +1}. When
/// class_counts is given it receives the per-class draw histogram.
Dataset shapes16(std::size_t n, Rng& rng,
                 std::array<std::size_t, 4>* class_counts = nullptr);

/// Builds one of the registered synthetic datasets by name.
Dataset make_named_dataset(const std::string& name, std::size_t n,
                           std::uint64_t seed);
std::vector<std::string> dataset_names();

/// Loads a CSV with header x0,...,x{d-1}; rows must parse as d floats.
/// Malformed rows are reported with their line number. Normalization is a
/// per-dimension min/max affine map into [-1,1].
Dataset load_csv(const std::filesystem::path& path);

/// Shuffled epochs over a dataset; the trailing short batch is dropped.
/// Copy-constructible so each worker owns an independently seeded stream.
class BatchStream {
 public:
  BatchStream(const Dataset& dataset, std::size_t batch_size, Rng rng);

  /// Next [batch_size, dim] tensor; reshuffles when an epoch ends.
  ad::Tensor next();
  std::size_t batches_per_epoch() const { return dataset_->n / batch_; }

 private:
  const Dataset* dataset_;
  std::size_t batch_;
  Rng rng_;
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
};

}  // namespace egan::data
