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

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "egan/data.hpp"

namespace egan::metrics {

/// Row-major point cloud.
struct SampleSet {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> points;

  const double* row(std::size_t i) const { return points.data() + i * dim; }
};

struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct MetricsReport {
  double fd = 0.0;  // desk-scale Fréchet distance, not an Inception FID
  double vendi = 0.0;
  std::size_t modes_covered = 0;
  double high_quality_fraction = 0.0;
  double kernel_bandwidth = 0.0;
  std::uint64_t projection_seed = 0;
};

/// Exponential of the Shannon entropy of the eigenvalues of K/n, where K is
/// an RBF kernel exp(-d^2 / (2h)). `bandwidth` is the squared length scale h;
/// leave it empty for the median heuristic (median pairwise squared
/// distance). Score lies in [1, n]. If `used_bandwidth` is given it receives
/// the h actually applied.
double vendi_score(const SampleSet& s,
                   std::optional<double> bandwidth = std::nullopt,
                   double* used_bandwidth = nullptr);

/// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}); the matrix square root
/// comes from the symmetric eigendecomposition of Sa^{1/2} Sb Sa^{1/2}.
/// Small negative residue (within 1e-8) clamps to 0; non-PSD inputs beyond
/// tolerance throw.
double frechet_distance(const GaussianStats& a, const GaussianStats& b);

/// Feature map applied before the Gaussian fit: identity for low-dimensional
/// data, otherwise a fixed random linear projection to `out_dim` whose seed
/// is recorded for the report.
struct Embedding {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::uint64_t seed = 0;
  std::vector<double> proj;  // out_dim x in_dim, empty = identity

  std::vector<double> apply(const double* x) const;
};

inline constexpr std::uint64_t kDefaultProjectionSeed = 0x5eedf00d;
inline constexpr std::size_t kProjectionDim = 16;

/// Identity when dim <= kProjectionDim, else a seed-determined Gaussian
/// projection to kProjectionDim dimensions (entries scaled 1/sqrt(out_dim)).
Embedding default_embedding(std::size_t dim,
                            std::uint64_t seed = kDefaultProjectionSeed);

/// Sample mean and unbiased (n-1) covariance of the embedded points.
/// Requires n > embedded dimension.
GaussianStats fit_gaussian(const SampleSet& s, const Embedding& embed);
GaussianStats fit_gaussian(const SampleSet& s);

struct CoverageResult {
  std::size_t modes_covered = 0;
  double high_quality_fraction = 0.0;
};

/// A sample is high-quality when within 3 sigma of its nearest mode; a mode
/// counts as covered when it attracts at least max(20, n / (10 * modes))
/// high-quality samples.
CoverageResult mode_coverage(const SampleSet& s,
                             const data::GaussianMixtureSpec& mixture);

}  // namespace egan::metrics
