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

#include "egan/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace egan::ad {

namespace {
thread_local Graph* t_active_graph = nullptr;
}

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ", ";
    out << shape[i];
  }
  out << "]";
  return out.str();
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return from_values(shape, std::vector<double>(shape_size(shape), 0.0),
                     requires_grad);
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values,
                           bool requires_grad) {
  for (std::size_t d : shape)
    if (d == 0) throw std::invalid_argument("tensor dims must be positive");
  if (values.size() != shape_size(shape))
    throw std::invalid_argument("value count does not match shape " +
                                shape_to_string(shape));
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->requires_grad = requires_grad;
  if (requires_grad) node->ensure_grad();
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value) {
  return from_values({1}, {value});
}

double Tensor::item() const {
  if (size() != 1)
    throw std::invalid_argument("item() requires a scalar tensor, shape is " +
                                shape_to_string(shape()));
  return node_->values[0];
}

void Tensor::zero_grad() {
  if (!node_->grad.empty()) node_->grad.assign(node_->values.size(), 0.0);
}

Tensor make_op_output(Shape shape) {
  return Tensor::zeros(std::move(shape));
}

Graph* Graph::active() { return t_active_graph; }

void Graph::record(std::shared_ptr<detail::Node> output,
                   std::function<void()> step) {
  output->on_tape = true;
  steps_.push_back({std::move(output), std::move(step)});
}

void Graph::backward(const Tensor& root) {
  if (!root.defined() || root.size() != 1)
    throw std::invalid_argument("backward requires a scalar root");
  auto root_node = root.node();
  if (!root_node->on_tape)
    throw std::invalid_argument("backward root was not produced on this graph");
  root_node->ensure_grad();
  root_node->grad[0] += 1.0;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->output->grad.empty()) continue;  // no gradient reached this op
    it->fn();
  }
}

GraphScope::GraphScope(Graph& graph) : previous_(t_active_graph) {
  t_active_graph = &graph;
}

GraphScope::~GraphScope() { t_active_graph = previous_; }

}  // namespace egan::ad
