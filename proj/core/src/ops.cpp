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

#include "egan/ops.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace egan::ad {

namespace {

using detail::Node;
using NodePtr = std::shared_ptr<Node>;

using MatMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

bool participates(const NodePtr& n) { return n->requires_grad || n->on_tape; }

bool should_record(std::initializer_list<NodePtr> inputs) {
  if (Graph::active() == nullptr) return false;
  for (const auto& n : inputs)
    if (participates(n)) return true;
  return false;
}

Tensor make_output(Shape shape) {
  return Tensor::zeros(std::move(shape));
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape())
    throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                shape_to_string(a.shape()) + " vs " +
                                shape_to_string(b.shape()));
}

// Elementwise binary op with per-element partials.
template <typename Fwd, typename DA, typename DB>
Tensor binary_elementwise(const Tensor& a, const Tensor& b, const char* name,
                          Fwd fwd, DA da, DB db) {
  check_same_shape(a, b, name);
  Tensor out = make_output(a.shape());
  const auto av = a.values();
  const auto bv = b.values();
  auto ov = out.values_mut();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = fwd(av[i], bv[i]);

  auto an = a.node(), bn = b.node(), on = out.node();
  if (should_record({an, bn})) {
    const bool ga = participates(an), gb = participates(bn);
    Graph::active()->record(on, [an, bn, on, ga, gb, da, db]() {
      if (ga) an->ensure_grad();
      if (gb) bn->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i) {
        const double g = on->grad[i];
        if (ga) an->grad[i] += g * da(an->values[i], bn->values[i]);
        if (gb) bn->grad[i] += g * db(an->values[i], bn->values[i]);
      }
    });
  }
  return out;
}

// Elementwise unary op; the partial sees (input, output).
template <typename Fwd, typename Dx>
Tensor unary_elementwise(const Tensor& a, Fwd fwd, Dx dx) {
  Tensor out = make_output(a.shape());
  const auto av = a.values();
  auto ov = out.values_mut();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = fwd(av[i]);

  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on, dx]() {
      an->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i)
        an->grad[i] += on->grad[i] * dx(an->values[i], on->values[i]);
    });
  }
  return out;
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double stable_softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.shape().size() != 2 || b.shape().size() != 2 || a.cols() != b.rows())
    throw std::invalid_argument("matmul: incompatible shapes " +
                                shape_to_string(a.shape()) + " x " +
                                shape_to_string(b.shape()));
  const auto m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out = make_output({m, n});
  {
    ConstMatMap ma(a.values().data(), m, k);
    ConstMatMap mb(b.values().data(), k, n);
    MatMap mo(out.values_mut().data(), m, n);
    mo.noalias() = ma * mb;
  }
  auto an = a.node(), bn = b.node(), on = out.node();
  if (should_record({an, bn})) {
    const bool ga = participates(an), gb = participates(bn);
    Graph::active()->record(on, [an, bn, on, ga, gb, m, k, n]() {
      ConstMatMap go(on->grad.data(), m, n);
      if (ga) {
        an->ensure_grad();
        MatMap(an->grad.data(), m, k).noalias() +=
            go * ConstMatMap(bn->values.data(), k, n).transpose();
      }
      if (gb) {
        bn->ensure_grad();
        MatMap(bn->grad.data(), k, n).noalias() +=
            ConstMatMap(an->values.data(), m, k).transpose() * go;
      }
    });
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  return binary_elementwise(
      a, b, "add", [](double x, double y) { return x + y; },
      [](double, double) { return 1.0; }, [](double, double) { return 1.0; });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return binary_elementwise(
      a, b, "sub", [](double x, double y) { return x - y; },
      [](double, double) { return 1.0; }, [](double, double) { return -1.0; });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return binary_elementwise(
      a, b, "mul", [](double x, double y) { return x * y; },
      [](double, double y) { return y; }, [](double x, double) { return x; });
}

Tensor div(const Tensor& a, const Tensor& b) {
  return binary_elementwise(
      a, b, "div", [](double x, double y) { return x / y; },
      [](double, double y) { return 1.0 / y; },
      [](double x, double y) { return -x / (y * y); });
}

Tensor neg(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return -x; }, [](double, double) { return -1.0; });
}

Tensor add_scalar(const Tensor& a, double c) {
  return unary_elementwise(
      a, [c](double x) { return x + c; }, [](double, double) { return 1.0; });
}

Tensor mul_scalar(const Tensor& a, double c) {
  return unary_elementwise(
      a, [c](double x) { return x * c; }, [c](double, double) { return c; });
}

Tensor sum(const Tensor& a) {
  Tensor out = make_output({1});
  double total = 0.0;
  for (double v : a.values()) total += v;
  out.values_mut()[0] = total;
  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on]() {
      an->ensure_grad();
      const double g = on->grad[0];
      for (double& gi : an->grad) gi += g;
    });
  }
  return out;
}

Tensor mean(const Tensor& a) {
  const double inv = 1.0 / static_cast<double>(a.size());
  Tensor out = make_output({1});
  double total = 0.0;
  for (double v : a.values()) total += v;
  out.values_mut()[0] = total * inv;
  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on, inv]() {
      an->ensure_grad();
      const double g = on->grad[0] * inv;
      for (double& gi : an->grad) gi += g;
    });
  }
  return out;
}

Tensor max_with_scalar(const Tensor& a, double floor) {
  return unary_elementwise(
      a, [floor](double x) { return x > floor ? x : floor; },
      [floor](double x, double) { return x > floor ? 1.0 : 0.0; });
}

Tensor clamp(const Tensor& a, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("clamp: lo > hi");
  return unary_elementwise(
      a, [lo, hi](double x) { return x < lo ? lo : (x > hi ? hi : x); },
      [lo, hi](double x, double) { return (x > lo && x < hi) ? 1.0 : 0.0; });
}

Tensor tanh(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor sigmoid(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return stable_sigmoid(x); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor softplus(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return stable_softplus(x); },
      [](double x, double) { return stable_sigmoid(x); });
}

Tensor log(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Tensor exp(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Tensor square(const Tensor& a) {
  return unary_elementwise(
      a, [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
  if (a.shape().size() != 2 || b.shape().size() != 2 || a.rows() != b.rows())
    throw std::invalid_argument("concat_cols: incompatible shapes " +
                                shape_to_string(a.shape()) + " vs " +
                                shape_to_string(b.shape()));
  const auto rows = a.rows(), ca = a.cols(), cb = b.cols();
  Tensor out = make_output({rows, ca + cb});
  auto ov = out.values_mut();
  const auto av = a.values(), bv = b.values();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < ca; ++c) ov[r * (ca + cb) + c] = av[r * ca + c];
    for (std::size_t c = 0; c < cb; ++c)
      ov[r * (ca + cb) + ca + c] = bv[r * cb + c];
  }
  auto an = a.node(), bn = b.node(), on = out.node();
  if (should_record({an, bn})) {
    const bool ga = participates(an), gb = participates(bn);
    Graph::active()->record(on, [an, bn, on, ga, gb, rows, ca, cb]() {
      if (ga) an->ensure_grad();
      if (gb) bn->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r) {
        if (ga)
          for (std::size_t c = 0; c < ca; ++c)
            an->grad[r * ca + c] += on->grad[r * (ca + cb) + c];
        if (gb)
          for (std::size_t c = 0; c < cb; ++c)
            bn->grad[r * cb + c] += on->grad[r * (ca + cb) + ca + c];
      }
    });
  }
  return out;
}

Tensor slice_cols(const Tensor& a, std::size_t c0, std::size_t c1) {
  if (a.shape().size() != 2 || c0 >= c1 || c1 > a.cols())
    throw std::invalid_argument("slice_cols: invalid range [" +
                                std::to_string(c0) + ", " + std::to_string(c1) +
                                ") for shape " + shape_to_string(a.shape()));
  const auto rows = a.rows(), cols = a.cols(), w = c1 - c0;
  Tensor out = make_output({rows, w});
  auto ov = out.values_mut();
  const auto av = a.values();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < w; ++c) ov[r * w + c] = av[r * cols + c0 + c];
  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on, rows, cols, w, c0]() {
      an->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < w; ++c)
          an->grad[r * cols + c0 + c] += on->grad[r * w + c];
    });
  }
  return out;
}

Tensor broadcast(const Tensor& a, const Shape& target) {
  const Shape& src = a.shape();
  if (a.size() == 1) {
    // scalar to anything
    Tensor out = make_output(target);
    const double v = a.values()[0];
    for (double& o : out.values_mut()) o = v;
    auto an = a.node(), on = out.node();
    if (should_record({an})) {
      Graph::active()->record(on, [an, on]() {
        an->ensure_grad();
        double g = 0.0;
        for (double gi : on->grad) g += gi;
        an->grad[0] += g;
      });
    }
    return out;
  }
  if (src.size() != 2 || target.size() != 2 ||
      !((src[0] == 1 && src[1] == target[1]) ||
        (src[1] == 1 && src[0] == target[0]) || src == target))
    throw std::invalid_argument("broadcast: cannot expand " +
                                shape_to_string(src) + " to " +
                                shape_to_string(target));
  if (src == target) return a;
  const auto rows = target[0], cols = target[1];
  const bool row_vec = src[0] == 1;
  Tensor out = make_output(target);
  auto ov = out.values_mut();
  const auto av = a.values();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      ov[r * cols + c] = row_vec ? av[c] : av[r];
  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on, rows, cols, row_vec]() {
      an->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          an->grad[row_vec ? c : r] += on->grad[r * cols + c];
    });
  }
  return out;
}

Tensor constant_like(const Tensor& a, std::vector<double> values) {
  if (values.size() != a.size())
    throw std::invalid_argument("constant_like: value count mismatch");
  return Tensor::from_values(a.shape(), std::move(values));
}

Tensor straight_through(const Tensor& a, std::vector<double> values) {
  if (values.size() != a.size())
    throw std::invalid_argument("straight_through: value count mismatch");
  Tensor out = make_output(a.shape());
  auto ov = out.values_mut();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = values[i];

  auto an = a.node(), on = out.node();
  if (should_record({an})) {
    Graph::active()->record(on, [an, on]() {
      an->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i)
        an->grad[i] += on->grad[i];
    });
  }
  return out;
}

}  // namespace egan::ad
