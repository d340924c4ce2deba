// Copyright (c) 2026 The semikern Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "semikern/matrix.hpp"

namespace semikern {

/// A mini-batch: m-by-n dense, one input vector per column.
using Batch = DenseMatrix;

/// L weight matrices (sparse or dense, all m-by-m) plus L bias vectors of
/// length m. All layers share one width; heterogeneous models are rejected
/// at construction. Immutable, safe to share across concurrent forward
/// passes.
class DnnModel {
 public:
  DnnModel(std::vector<Matrix> weights, std::vector<std::vector<Scalar>> biases);

  index_t num_layers() const noexcept {
    return static_cast<index_t>(weights_.size());
  }
  index_t neurons() const noexcept { return neurons_; }

  const Matrix& weight(index_t k) const { return weights_[k]; }
  std::span<const Scalar> bias(index_t k) const { return biases_[k]; }

 private:
  index_t neurons_ = 0;
  std::vector<Matrix> weights_;
  std::vector<std::vector<Scalar>> biases_;
};

struct ForwardOptions {
  int workers = 1;
  /// When true, the bias is replicated into an explicit m-by-n matrix and
  /// combined through the generic element-wise kernel, for strict-fidelity
  /// benchmarking. The default reads bias[i] per row; both paths produce
  /// identical output.
  bool materialize_bias = false;
};

/// One forward layer as the two-semiring pipeline:
///
///   Z       = mxm(W, Y, arithmetic)                 weight multiply
///   Z       = ewise_mul(Z, bias columns, max-plus)  bias add (+ is max-plus mul)
///   Y_next  = ewise_add(Z, zeros, max-plus)         ReLU (max against 0)
///
/// `relu_zero` is the m-by-n zero matrix for the last step; callers that
/// loop over layers (or time this unit) allocate it once and reuse it.
DenseMatrix layer_step(const Matrix& w, std::span<const Scalar> bias,
                       const DenseMatrix& y, const DenseMatrix& relu_zero,
                       const ForwardOptions& opt = {});

/// Convenience overload that materializes the zero matrix itself.
DenseMatrix layer_step(const Matrix& w, std::span<const Scalar> bias,
                       const DenseMatrix& y, const ForwardOptions& opt = {});

/// Runs layer_step over all L layers: Y_L from Y_0. The ReLU zero matrix is
/// created once per call and reused across layers. Output is m-by-n with
/// every entry >= 0, bitwise independent of opt.workers.
Batch relu_forward(const DnnModel& model, const Batch& input,
                   const ForwardOptions& opt = {});

/// Plain dense reference: Y_next = max(W*Y + b, 0) with the weights held
/// dense, the multiply done by dense_mxm_baseline and the bias/ReLU by a
/// direct element-wise loop. This is both the correctness oracle for
/// relu_forward and the timing subject for the dense side of the
/// comparison.
Batch dense_relu_forward(const DnnModel& model, const Batch& input);

/// Single dense layer, the unit the benchmark times for the dense leg.
DenseMatrix dense_layer_step(const DenseMatrix& w, std::span<const Scalar> bias,
                             const DenseMatrix& y, int workers = 1);

}  // namespace semikern
