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

#include <cstdint>
#include <vector>

#include "semikern/matrix.hpp"

namespace semikern {

/// Parameters for seeded workload generation. Inverse sparsity is the total
/// element count divided by the expected number of nonzeros; 1 means dense.
struct GenSpec {
  index_t m = 0;
  double inverse_sparsity = 1.0;
  index_t batch = 64;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless m >= 1, batch >= 1, inverse_sparsity >= 1.
  void validate() const;
};

enum class BiasMode { zero, uniform01 };

/// m-by-m CSR weight matrix: each entry is present independently with
/// probability 1/inverse_sparsity and carries a value drawn from U[-1, 3).
///
/// Values and presence selectors are separate SplitMix64 streams addressed
/// by entry index, so the same (m, seed) defines one underlying dense value
/// matrix and every sparsity level masks it: the entries at inverse
/// sparsity s' > s are a subset of those at s. Identical spec, identical
/// matrix, on every platform.
CsrMatrix gen_weight(const GenSpec& spec);

/// m-by-batch dense input with entries from U[0, 1).
DenseMatrix gen_input(const GenSpec& spec);

/// Length-m bias vector: all 0.0 (default) or U[0, 1) entries.
std::vector<Scalar> gen_bias(const GenSpec& spec, BiasMode mode = BiasMode::zero);

}  // namespace semikern
