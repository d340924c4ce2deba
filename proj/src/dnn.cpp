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

#include "semikern/dnn.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace semikern {

DnnModel::DnnModel(std::vector<Matrix> weights,
                   std::vector<std::vector<Scalar>> biases)
    : weights_(std::move(weights)), biases_(std::move(biases)) {
  if (weights_.empty()) {
    throw InvalidArgument("model must have at least one layer");
  }
  if (weights_.size() != biases_.size()) {
    throw InvalidArgument("model has " + std::to_string(weights_.size()) +
                          " weight matrices but " +
                          std::to_string(biases_.size()) + " bias vectors");
  }
  neurons_ = weights_.front().rows();
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const Matrix& w = weights_[k];
    if (w.rows() != neurons_ || w.cols() != neurons_) {
      throw DimensionError("layer " + std::to_string(k) + " weight is " +
                           std::to_string(w.rows()) + "x" +
                           std::to_string(w.cols()) + "; all layers must be " +
                           std::to_string(neurons_) + "x" +
                           std::to_string(neurons_));
    }
    if (biases_[k].size() != neurons_) {
      throw DimensionError("layer " + std::to_string(k) + " bias length " +
                           std::to_string(biases_[k].size()) +
                           " does not match " + std::to_string(neurons_) +
                           " neurons");
    }
  }
}

namespace {

void require_input(index_t neurons, const DenseMatrix& y) {
  if (y.rows() != neurons || y.cols() < 1) {
    throw DimensionError("input batch is " + std::to_string(y.rows()) + "x" +
                         std::to_string(y.cols()) + ", expected " +
                         std::to_string(neurons) + " rows and n >= 1 columns");
  }
}

// Bias add, b_k replicated along columns. The default path reads bias[i]
// per row instead of materializing the m-by-n replication.
DenseMatrix apply_bias(DenseMatrix z, std::span<const Scalar> bias,
                       bool materialize) {
  if (materialize) {
    DenseMatrix b(z.rows(), z.cols());
    for (index_t i = 0; i < b.rows(); ++i) {
      std::fill_n(b.row(i).data(), b.cols(), bias[i]);
    }
    return ewise_mul(z, b, max_plus_semiring());
  }
  for (index_t i = 0; i < z.rows(); ++i) {
    Scalar* row = z.row(i).data();
    const Scalar bi = bias[i];
    for (index_t j = 0; j < z.cols(); ++j) {
      row[j] = ops::MaxPlus::mul(row[j], bi);
    }
  }
  return z;
}

}  // namespace

DenseMatrix layer_step(const Matrix& w, std::span<const Scalar> bias,
                       const DenseMatrix& y, const DenseMatrix& relu_zero,
                       const ForwardOptions& opt) {
  if (w.cols() != y.rows()) {
    throw DimensionError("weight is " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()) + " but input has " +
                         std::to_string(y.rows()) + " rows");
  }
  if (bias.size() != w.rows()) {
    throw DimensionError("bias length " + std::to_string(bias.size()) +
                         " does not match " + std::to_string(w.rows()) +
                         " output rows");
  }
  DenseMatrix z = mxm(w, y, arithmetic_semiring(), opt.workers);
  z = apply_bias(std::move(z), bias, opt.materialize_bias);
  // ReLU: max against the zero matrix, the max-plus element-wise add.
  return ewise_add(z, relu_zero, max_plus_semiring());
}

DenseMatrix layer_step(const Matrix& w, std::span<const Scalar> bias,
                       const DenseMatrix& y, const ForwardOptions& opt) {
  const DenseMatrix relu_zero(w.rows(), y.cols(), 0.0f);
  return layer_step(w, bias, y, relu_zero, opt);
}

Batch relu_forward(const DnnModel& model, const Batch& input,
                   const ForwardOptions& opt) {
  require_input(model.neurons(), input);
  // One zero matrix for the whole pass, reused by every layer's ReLU.
  const DenseMatrix relu_zero(model.neurons(), input.cols(), 0.0f);
  DenseMatrix y = input;
  for (index_t k = 0; k < model.num_layers(); ++k) {
    y = layer_step(model.weight(k), model.bias(k), y, relu_zero, opt);
  }
  return y;
}

DenseMatrix dense_layer_step(const DenseMatrix& w, std::span<const Scalar> bias,
                             const DenseMatrix& y, int workers) {
  if (bias.size() != w.rows()) {
    throw DimensionError("bias length " + std::to_string(bias.size()) +
                         " does not match " + std::to_string(w.rows()) +
                         " output rows");
  }
  DenseMatrix z = dense_mxm_baseline(w, y, workers);
  for (index_t i = 0; i < z.rows(); ++i) {
    Scalar* row = z.row(i).data();
    const Scalar bi = bias[i];
    for (index_t j = 0; j < z.cols(); ++j) {
      row[j] = std::max(row[j] + bi, 0.0f);
    }
  }
  return z;
}

Batch dense_relu_forward(const DnnModel& model, const Batch& input) {
  require_input(model.neurons(), input);
  DenseMatrix y = input;
  for (index_t k = 0; k < model.num_layers(); ++k) {
    const DenseMatrix wd = to_dense(model.weight(k), 0.0f);
    y = dense_layer_step(wd, model.bias(k), y);
  }
  return y;
}

}  // namespace semikern
