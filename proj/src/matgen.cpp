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

#include "semikern/matgen.hpp"

#include <cstddef>
#include <limits>
#include <utility>

#include "semikern/rng.hpp"

namespace semikern {

void GenSpec::validate() const {
  if (m < 1) throw InvalidArgument("GenSpec: m must be >= 1");
  if (batch < 1) throw InvalidArgument("GenSpec: batch must be >= 1");
  if (!(inverse_sparsity >= 1.0)) {
    throw InvalidArgument("GenSpec: inverse_sparsity must be >= 1");
  }
}

namespace {

// Independent SplitMix64 streams per artifact, derived from the user seed.
// Entry i*m+j addresses the stream directly, so the dense value matrix for a
// given (m, seed) is fixed and every sparsity level masks the same values.
enum Stream : std::uint64_t {
  kWeightSelect = 0,
  kWeightValue = 1,
  kInput = 2,
  kBias = 3,
};

std::uint64_t stream_seed(std::uint64_t seed, Stream which) {
  return SplitMix64::at(seed, which);
}

}  // namespace

CsrMatrix gen_weight(const GenSpec& spec) {
  spec.validate();
  const double p = 1.0 / spec.inverse_sparsity;
  const std::uint64_t select = stream_seed(spec.seed, kWeightSelect);
  const std::uint64_t value = stream_seed(spec.seed, kWeightValue);
  const index_t m = spec.m;

  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(m) + 1);
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  const auto expected =
      static_cast<std::size_t>(p * static_cast<double>(m) * m * 1.05) + 16;
  col_idx.reserve(expected);
  values.reserve(expected);

  row_ptr.push_back(0);
  for (index_t i = 0; i < m; ++i) {
    std::uint64_t idx = static_cast<std::uint64_t>(i) * m;
    for (index_t j = 0; j < m; ++j, ++idx) {
      if (SplitMix64::to_unit(SplitMix64::at(select, idx)) < p) {
        const auto v = static_cast<Scalar>(
            -1.0 + 4.0 * SplitMix64::to_unit(SplitMix64::at(value, idx)));
        if (v != 0.0f) {  // same elision rule as csr_from_triples
          col_idx.push_back(j);
          values.push_back(v);
        }
      }
    }
    if (col_idx.size() > std::numeric_limits<index_t>::max()) {
      throw InvalidArgument("generated nnz exceeds the 32-bit index range");
    }
    row_ptr.push_back(static_cast<index_t>(col_idx.size()));
  }
  return CsrMatrix::from_parts_unchecked(m, m, std::move(row_ptr),
                                         std::move(col_idx), std::move(values));
}

DenseMatrix gen_input(const GenSpec& spec) {
  spec.validate();
  const std::uint64_t stream = stream_seed(spec.seed, kInput);
  DenseMatrix y(spec.m, spec.batch);
  const auto data = y.data();
  for (std::size_t idx = 0; idx < data.size(); ++idx) {
    data[idx] =
        static_cast<Scalar>(SplitMix64::to_unit(SplitMix64::at(stream, idx)));
  }
  return y;
}

std::vector<Scalar> gen_bias(const GenSpec& spec, BiasMode mode) {
  spec.validate();
  std::vector<Scalar> bias(spec.m, 0.0f);
  if (mode == BiasMode::uniform01) {
    const std::uint64_t stream = stream_seed(spec.seed, kBias);
    for (std::size_t i = 0; i < bias.size(); ++i) {
      bias[i] =
          static_cast<Scalar>(SplitMix64::to_unit(SplitMix64::at(stream, i)));
    }
  }
  return bias;
}

}  // namespace semikern
