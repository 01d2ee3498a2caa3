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

#include "egan/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace egan::data {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

void GaussianMixtureSpec::validate() const {
  if (means.empty())
    throw std::invalid_argument("mixture: no components");
  if (sigma <= 0.0) throw std::invalid_argument("mixture: sigma must be > 0");
  if (weights.size() != means.size())
    throw std::invalid_argument("mixture: weight/component count mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("mixture: weights sum to " +
                                std::to_string(sum) + ", expected 1");
  for (const auto& m : means)
    if (m.size() != means[0].size())
      throw std::invalid_argument("mixture: inconsistent mean dimensions");
}

std::vector<double> GaussianMixtureSpec::sample(std::size_t n,
                                                Rng& rng) const {
  validate();
  const std::size_t d = dim();
  std::vector<double> out(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t k = means.size() - 1;
    for (std::size_t m = 0; m < weights.size(); ++m) {
      acc += weights[m];
      if (u < acc) {
        k = m;
        break;
      }
    }
    for (std::size_t j = 0; j < d; ++j)
      out[i * d + j] = means[k][j] + sigma * rng.normal();
  }
  return out;
}

GaussianMixtureSpec GaussianMixtureSpec::scaled(double scale) const {
  GaussianMixtureSpec s = *this;
  for (auto& m : s.means)
    for (double& v : m) v /= scale;
  s.sigma /= scale;
  return s;
}

GaussianMixtureSpec ring8() {
  GaussianMixtureSpec spec;
  spec.sigma = 0.05;
  for (int k = 0; k < 8; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 8.0;
    spec.means.push_back({2.0 * std::cos(theta), 2.0 * std::sin(theta)});
  }
  spec.weights.assign(8, 1.0 / 8.0);
  return spec;
}

GaussianMixtureSpec grid25() {
  GaussianMixtureSpec spec;
  spec.sigma = 0.05;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      spec.means.push_back({-4.0 + 2.0 * i, -4.0 + 2.0 * j});
  spec.weights.assign(25, 1.0 / 25.0);
  return spec;
}

Dataset mixture_dataset(const std::string& name,
                        const GaussianMixtureSpec& spec, std::size_t n,
                        double half_range, Rng& rng) {
  if (half_range <= 0.0)
    throw std::invalid_argument("mixture_dataset: half_range must be > 0");
  Dataset ds;
  ds.name = name;
  ds.dim = spec.dim();
  ds.n = n;
  ds.center.assign(ds.dim, 0.0);
  ds.half_range.assign(ds.dim, half_range);
  ds.points = spec.sample(n, rng);
  for (double& v : ds.points) v = clamp_unit(v / half_range);
  ds.normalized_mixture = spec.scaled(half_range);
  return ds;
}

Dataset shapes16(std::size_t n, Rng& rng,
                 std::array<std::size_t, 4>* class_counts) {
  constexpr std::size_t kSide = 16;
  constexpr std::size_t kDim = kSide * kSide;
  Dataset ds;
  ds.name = "shapes16";
  ds.dim = kDim;
  ds.n = n;
  ds.center.assign(kDim, 0.0);
  ds.half_range.assign(kDim, 1.0);
  ds.points.assign(n * kDim, -1.0);
  if (class_counts) class_counts->fill(0);

  for (std::size_t i = 0; i < n; ++i) {
    double* img = ds.points.data() + i * kDim;
    const std::size_t cls = rng.uniform_index(4);
    if (class_counts) ++(*class_counts)[cls];
    auto set_px = [&](std::size_t x, std::size_t y) {
      if (x < kSide && y < kSide) img[y * kSide + x] = 1.0;
    };
    switch (cls) {
      case 0: {  // horizontal bar
        const std::size_t y = rng.uniform_index(kSide);
        const std::size_t th = 1 + rng.uniform_index(3);
        for (std::size_t dy = 0; dy < th; ++dy)
          for (std::size_t x = 0; x < kSide; ++x) set_px(x, y + dy);
        break;
      }
      case 1: {  // vertical bar
        const std::size_t x = rng.uniform_index(kSide);
        const std::size_t th = 1 + rng.uniform_index(3);
        for (std::size_t dx = 0; dx < th; ++dx)
          for (std::size_t y = 0; y < kSide; ++y) set_px(x + dx, y);
        break;
      }
      case 2: {  // filled rectangle
        const std::size_t w = 3 + rng.uniform_index(8);
        const std::size_t h = 3 + rng.uniform_index(8);
        const std::size_t x0 = rng.uniform_index(kSide - w + 1);
        const std::size_t y0 = rng.uniform_index(kSide - h + 1);
        for (std::size_t y = 0; y < h; ++y)
          for (std::size_t x = 0; x < w; ++x) set_px(x0 + x, y0 + y);
        break;
      }
      default: {  // disc
        const double r = 2.0 + 4.0 * rng.uniform();
        const double cx = r + (kSide - 1 - 2.0 * r) * rng.uniform();
        const double cy = r + (kSide - 1 - 2.0 * r) * rng.uniform();
        for (std::size_t y = 0; y < kSide; ++y)
          for (std::size_t x = 0; x < kSide; ++x) {
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= r * r) set_px(x, y);
          }
        break;
      }
    }
  }
  return ds;
}

Dataset make_named_dataset(const std::string& name, std::size_t n,
                           std::uint64_t seed) {
  Rng rng(seed);
  if (name == "ring8") return mixture_dataset("ring8", ring8(), n, 2.3, rng);
  if (name == "grid25")
    return mixture_dataset("grid25", grid25(), n, 4.3, rng);
  if (name == "shapes16") return shapes16(n, rng);
  throw std::invalid_argument("unknown dataset '" + name +
                              "' (expected ring8|grid25|shapes16)");
}

std::vector<std::string> dataset_names() {
  return {"ring8", "grid25", "shapes16"};
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path.string() + ": empty file");

  // Header x0,x1,... fixes the dimension.
  std::size_t dim = 1;
  for (char c : line)
    if (c == ',') ++dim;

  Dataset ds;
  ds.name = path.stem().string();
  ds.dim = dim;

  std::vector<double> raw;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || cell.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw std::runtime_error(path.string() + ":" +
                                 std::to_string(line_no) +
                                 ": cannot parse '" + cell + "' as a number");
      raw.push_back(v);
    }
    if (col != dim)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(dim) +
                               " columns, got " + std::to_string(col));
  }
  ds.n = raw.size() / dim;
  if (ds.n == 0) throw std::runtime_error(path.string() + ": no data rows");

  // Per-dimension min/max affine map into [-1,1].
  ds.center.resize(dim);
  ds.half_range.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    double lo = raw[d], hi = raw[d];
    for (std::size_t i = 1; i < ds.n; ++i) {
      lo = std::min(lo, raw[i * dim + d]);
      hi = std::max(hi, raw[i * dim + d]);
    }
    ds.center[d] = (lo + hi) / 2.0;
    ds.half_range[d] = hi > lo ? (hi - lo) / 2.0 : 1.0;
  }
  ds.points.resize(raw.size());
  for (std::size_t i = 0; i < ds.n; ++i)
    for (std::size_t d = 0; d < dim; ++d)
      ds.points[i * dim + d] =
          clamp_unit((raw[i * dim + d] - ds.center[d]) / ds.half_range[d]);
  return ds;
}

BatchStream::BatchStream(const Dataset& dataset, std::size_t batch_size,
                         Rng rng)
    : dataset_(&dataset), batch_(batch_size), rng_(rng) {
  if (batch_size == 0)
    throw std::invalid_argument("BatchStream: batch_size must be > 0");
  if (dataset.n < batch_size)
    throw std::invalid_argument("BatchStream: dataset smaller than one batch");
  order_.resize(dataset.n);
  for (std::size_t i = 0; i < dataset.n; ++i) order_[i] = i;
  rng_.shuffle(order_.begin(), order_.end());
}

ad::Tensor BatchStream::next() {
  if (pos_ + batch_ > batches_per_epoch() * batch_) {
    rng_.shuffle(order_.begin(), order_.end());
    pos_ = 0;
  }
  std::vector<double> vals(batch_ * dataset_->dim);
  for (std::size_t b = 0; b < batch_; ++b) {
    const double* src = dataset_->row(order_[pos_ + b]);
    std::copy(src, src + dataset_->dim, vals.begin() + b * dataset_->dim);
  }
  pos_ += batch_;
  return ad::Tensor::from_values({batch_, dataset_->dim}, std::move(vals));
}

}  // namespace egan::data
