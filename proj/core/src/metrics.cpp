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

#include "egan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "egan/rng.hpp"

namespace egan::metrics {

namespace {

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

// Symmetric PSD square root; eigenvalues in [-tol, 0) clamp to 0,
// below -tol throw.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      (m + m.transpose()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error(std::string(what) + ": eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  constexpr double kTol = 1e-8;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kTol)
      throw std::invalid_argument(std::string(what) +
                                  ": matrix is not positive semidefinite "
                                  "(eigenvalue " +
                                  std::to_string(ev[i]) + ")");
    ev[i] = std::sqrt(std::max(ev[i], 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

double vendi_score(const SampleSet& s, std::optional<double> bandwidth,
                   double* used_bandwidth) {
  if (s.n < 2) throw std::invalid_argument("vendi_score: need n >= 2");
  for (double v : s.points)
    if (!std::isfinite(v))
      throw std::invalid_argument("vendi_score: non-finite sample values");

  const std::size_t n = s.n;
  double h;
  if (bandwidth) {
    if (*bandwidth <= 0.0)
      throw std::invalid_argument("vendi_score: bandwidth must be positive");
    h = *bandwidth;
  } else {
    std::vector<double> d2;
    d2.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        d2.push_back(squared_distance(s.row(i), s.row(j), s.dim));
    std::nth_element(d2.begin(), d2.begin() + d2.size() / 2, d2.end());
    h = d2[d2.size() / 2];
    if (h <= 0.0) h = 1.0;  // all points identical; kernel is all-ones anyway
  }
  if (used_bandwidth) *used_bandwidth = h;

  Eigen::MatrixXd k(n, n);
  const double inv2h = 1.0 / (2.0 * h);
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v =
          std::exp(-squared_distance(s.row(i), s.row(j), s.dim) * inv2h);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      k / static_cast<double>(n), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("vendi_score: eigendecomposition failed");

  double entropy = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i] < 1e-12 ? 0.0 : es.eigenvalues()[i];
    if (lam > 0.0) entropy -= lam * std::log(lam);
  }
  return std::exp(entropy);
}

double frechet_distance(const GaussianStats& a, const GaussianStats& b) {
  if (a.mean.size() != b.mean.size())
    throw std::invalid_argument("frechet_distance: dimension mismatch");
  const Eigen::MatrixXd sa_half = psd_sqrt(a.cov, "frechet_distance");
  const Eigen::MatrixXd cross = psd_sqrt(sa_half * b.cov * sa_half,
                                         "frechet_distance");
  const double mean_term = (a.mean - b.mean).squaredNorm();
  const double trace_term =
      a.cov.trace() + b.cov.trace() - 2.0 * cross.trace();
  double fd = mean_term + trace_term;
  if (fd < 0.0 && fd > -1e-8) fd = 0.0;
  return fd;
}

std::vector<double> Embedding::apply(const double* x) const {
  if (proj.empty()) return std::vector<double>(x, x + in_dim);
  std::vector<double> y(out_dim, 0.0);
  for (std::size_t o = 0; o < out_dim; ++o) {
    double acc = 0.0;
    for (std::size_t i = 0; i < in_dim; ++i) acc += proj[o * in_dim + i] * x[i];
    y[o] = acc;
  }
  return y;
}

Embedding default_embedding(std::size_t dim, std::uint64_t seed) {
  Embedding e;
  e.in_dim = dim;
  e.seed = seed;
  if (dim <= kProjectionDim) {
    e.out_dim = dim;
    return e;
  }
  e.out_dim = kProjectionDim;
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(kProjectionDim));
  e.proj.resize(e.out_dim * dim);
  for (double& v : e.proj) v = rng.normal() * scale;
  return e;
}

GaussianStats fit_gaussian(const SampleSet& s, const Embedding& embed) {
  if (embed.in_dim != s.dim)
    throw std::invalid_argument("fit_gaussian: embedding dimension mismatch");
  const std::size_t d = embed.out_dim;
  if (s.n <= d)
    throw std::invalid_argument(
        "fit_gaussian: need n > embedded dim (n=" + std::to_string(s.n) +
        ", dim=" + std::to_string(d) + ")");

  Eigen::MatrixXd pts(s.n, d);
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto y = embed.apply(s.row(i));
    for (std::size_t j = 0; j < d; ++j) pts(i, j) = y[j];
  }
  GaussianStats g;
  g.mean = pts.colwise().mean();
  Eigen::MatrixXd centered = pts.rowwise() - g.mean.transpose();
  g.cov = centered.transpose() * centered / static_cast<double>(s.n - 1);
  return g;
}

GaussianStats fit_gaussian(const SampleSet& s) {
  return fit_gaussian(s, default_embedding(s.dim));
}

CoverageResult mode_coverage(const SampleSet& s,
                             const data::GaussianMixtureSpec& mixture) {
  if (mixture.means.empty())
    throw std::invalid_argument("mode_coverage: empty mixture");
  if (mixture.dim() != s.dim)
    throw std::invalid_argument("mode_coverage: dimension mismatch");

  const std::size_t modes = mixture.modes();
  const double r2 = 9.0 * mixture.sigma * mixture.sigma;  // (3 sigma)^2
  std::vector<std::size_t> hq_per_mode(modes, 0);
  std::size_t hq = 0;
  for (std::size_t i = 0; i < s.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_mode = 0;
    for (std::size_t m = 0; m < modes; ++m) {
      const double d2 =
          squared_distance(s.row(i), mixture.means[m].data(), s.dim);
      if (d2 < best) {
        best = d2;
        best_mode = m;
      }
    }
    if (best <= r2) {
      ++hq;
      ++hq_per_mode[best_mode];
    }
  }
  const std::size_t threshold =
      std::max<std::size_t>(20, s.n / (10 * modes));
  CoverageResult r;
  for (std::size_t m = 0; m < modes; ++m)
    if (hq_per_mode[m] >= threshold) ++r.modes_covered;
  r.high_quality_fraction =
      s.n == 0 ? 0.0 : static_cast<double>(hq) / static_cast<double>(s.n);
  return r;
}

}  // namespace egan::metrics
