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

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace egan::ad {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_to_string(const Shape& shape);

namespace detail {

struct Node {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty until the node joins a backward path
  bool requires_grad = false;
  bool on_tape = false;  // produced by a recorded op of the active graph

  std::size_t size() const { return values.size(); }
  void ensure_grad() {
    if (grad.size() != values.size()) grad.assign(values.size(), 0.0);
  }
};

}  // namespace detail

/// Dense n-d value array, a shared handle to its storage. Copies alias.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double value);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t size() const { return node_->values.size(); }
  std::size_t rows() const { return node_->shape.at(0); }
  std::size_t cols() const { return node_->shape.at(1); }

  std::span<const double> values() const { return node_->values; }
  std::span<double> values_mut() { return node_->values; }
  double item() const;

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool flag) { node_->requires_grad = flag; }
  bool has_grad() const { return !node_->grad.empty(); }
  std::span<const double> grad() const { return node_->grad; }
  std::span<double> grad_mut() { return node_->grad; }
  void zero_grad();

  std::shared_ptr<detail::Node> node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<detail::Node> node_;

  friend Tensor make_op_output(Shape shape);
};

/// Ordered record of executed operations; the topological order is the
/// execution order. Bind a Graph with GraphScope to record ops on the
/// current thread; without an active graph, ops run in inference mode.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  /// Reverse-mode sweep from a scalar root. Gradients of every
  /// requires_grad leaf accumulate additively.
  void backward(const Tensor& root);

  std::size_t op_count() const { return steps_.size(); }
  void clear() { steps_.clear(); }

  /// Used by op implementations: registers the backward closure of an op.
  void record(std::shared_ptr<detail::Node> output, std::function<void()> step);

  static Graph* active();

 private:
  struct Step {
    std::shared_ptr<detail::Node> output;
    std::function<void()> fn;
  };
  std::vector<Step> steps_;
};

/// RAII binding of a Graph as the current thread's recording target.
class GraphScope {
 public:
  explicit GraphScope(Graph& graph);
  ~GraphScope();
  GraphScope(const GraphScope&) = delete;
  GraphScope& operator=(const GraphScope&) = delete;

 private:
  Graph* previous_;
};

}  // namespace egan::ad
