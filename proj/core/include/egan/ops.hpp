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

#include "egan/tensor.hpp"

namespace egan::ad {

// Dense forward ops. Each result is registered on the active Graph when any
// input participates in differentiation. Elementwise ops require identical
// shapes; use broadcast() to adapt. Shape mismatches throw with both shapes.

Tensor matmul(const Tensor& a, const Tensor& b);  // [m,k] x [k,n] -> [m,n]

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);

Tensor add_scalar(const Tensor& a, double c);
Tensor mul_scalar(const Tensor& a, double c);

Tensor sum(const Tensor& a);   // -> scalar
Tensor mean(const Tensor& a);  // -> scalar

/// Elementwise max(a, floor); subgradient 0 exactly at the kink.
Tensor max_with_scalar(const Tensor& a, double floor);
/// min(max(a, lo), hi) with the same kink convention.
Tensor clamp(const Tensor& a, double lo, double hi);

Tensor tanh(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor log(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor square(const Tensor& a);

/// Column-wise concatenation of two [B, n] tensors.
Tensor concat_cols(const Tensor& a, const Tensor& b);
/// Columns [c0, c1) of a [B, n] tensor.
Tensor slice_cols(const Tensor& a, std::size_t c0, std::size_t c1);

/// Expands dims of size 1 to the target shape (scalar -> any, [1,n] -> [B,n],
/// [B,1] -> [B,n]). The gradient sums over the expanded dims.
Tensor broadcast(const Tensor& a, const Shape& target);

/// Constant copy detached from differentiation.
Tensor constant_like(const Tensor& a, std::vector<double> values);

/// Forward emits `values` verbatim; backward passes gradients through to `a`
/// unchanged (straight-through estimator).
Tensor straight_through(const Tensor& a, std::vector<double> values);

}  // namespace egan::ad
