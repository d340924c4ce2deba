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

#include <cmath>
#include <cstring>
#include <vector>

#include "semikern/matrix.hpp"
#include "semikern/rng.hpp"

namespace semikern::testing {

// Domain samplers. Max-plus reals come off a 1/64 lattice in (-8, 8) so
// that chains of up to three binary32 additions stay exact and the exact
// matrix-law checks can compare bitwise.
inline Scalar sample_value(SemiringKind kind, SplitMix64& rng) {
  switch (kind) {
    case SemiringKind::arithmetic: {
      const auto v = static_cast<Scalar>(-2.0 + 4.0 * rng.next_unit());
      return v == 0.0f ? 1.0f : v;
    }
    case SemiringKind::max_plus: {
      const auto step = static_cast<long>(rng.next() % 1024) - 512;
      return static_cast<Scalar>(step) / 64.0f;
    }
    case SemiringKind::min_max:
      return static_cast<Scalar>(10.0 * rng.next_unit());
    case SemiringKind::gf2:
    default:
      return 1.0f;  // stored GF(2) entries are ones; zeros are absent
  }
}

// Dense matrix over the semiring's domain; roughly one entry in four is the
// zero element, so sparse and dense code paths see realistic fill.
inline DenseMatrix random_dense(index_t rows, index_t cols, const Semiring& s,
                                SplitMix64& rng) {
  DenseMatrix m(rows, cols, s.zero);
  for (index_t i = 0; i < rows; ++i) {
    for (index_t j = 0; j < cols; ++j) {
      if ((rng.next() & 3u) != 0) m(i, j) = sample_value(s.kind, rng);
    }
  }
  return m;
}

inline CsrMatrix random_csr(index_t rows, index_t cols, double density,
                            const Semiring& s, SplitMix64& rng) {
  std::vector<Triple> triples;
  for (index_t i = 0; i < rows; ++i) {
    for (index_t j = 0; j < cols; ++j) {
      if (rng.next_unit() < density) {
        triples.push_back({i, j, sample_value(s.kind, rng)});
      }
    }
  }
  return csr_from_triples(rows, cols, triples);
}

// Rebuilds `a` with explicit zero-element entries stored at roughly
// `prob` of the absent positions, through the validating constructor (the
// triple builder would elide arithmetic/GF(2) zeros).
inline CsrMatrix inject_stored_zeros(const CsrMatrix& a, Scalar zero_element,
                                     double prob, SplitMix64& rng) {
  std::vector<index_t> row_ptr{0};
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    std::size_t k = 0;
    for (index_t j = 0; j < a.cols(); ++j) {
      if (k < cols.size() && cols[k] == j) {
        col_idx.push_back(j);
        values.push_back(vals[k]);
        ++k;
      } else if (rng.next_unit() < prob) {
        col_idx.push_back(j);
        values.push_back(zero_element);
      }
    }
    row_ptr.push_back(static_cast<index_t>(col_idx.size()));
  }
  return CsrMatrix(a.rows(), a.cols(), std::move(row_ptr), std::move(col_idx),
                   std::move(values));
}

// Reference kernels: textbook triple loops on dense data through the
// runtime add/mul switch, independent of the templated library kernels.

inline DenseMatrix mxm_oracle(const DenseMatrix& a, const DenseMatrix& b,
                              const Semiring& s) {
  DenseMatrix c(a.rows(), b.cols(), s.zero);
  for (index_t i = 0; i < a.rows(); ++i) {
    for (index_t j = 0; j < b.cols(); ++j) {
      Scalar acc = s.zero;
      for (index_t k = 0; k < a.cols(); ++k) {
        acc = s.add(acc, s.mul(a(i, k), b(k, j)));
      }
      c(i, j) = acc;
    }
  }
  return c;
}

inline DenseMatrix ewise_add_oracle(const DenseMatrix& a, const DenseMatrix& b,
                                    const Semiring& s) {
  DenseMatrix c(a.rows(), a.cols());
  for (index_t i = 0; i < a.rows(); ++i) {
    for (index_t j = 0; j < a.cols(); ++j) c(i, j) = s.add(a(i, j), b(i, j));
  }
  return c;
}

inline DenseMatrix ewise_mul_oracle(const DenseMatrix& a, const DenseMatrix& b,
                                    const Semiring& s) {
  DenseMatrix c(a.rows(), a.cols());
  for (index_t i = 0; i < a.rows(); ++i) {
    for (index_t j = 0; j < a.cols(); ++j) c(i, j) = s.mul(a(i, j), b(i, j));
  }
  return c;
}

// --- comparisons -----------------------------------------------------------

inline bool values_match(Scalar x, Scalar y, bool exact) {
  return exact ? x == y : approx_equal(x, y);
}

inline bool dense_match(const DenseMatrix& a, const DenseMatrix& b,
                        bool exact) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!values_match(x[i], y[i], exact)) return false;
  }
  return true;
}

// Logical equality over the semiring: absent positions read as s.zero.
inline bool matrices_match(const Matrix& a, const Matrix& b, const Semiring& s,
                           bool exact) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return dense_match(to_dense(a, s.zero), to_dense(b, s.zero), exact);
}

inline bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data().data(), b.data().data(),
                     a.data().size_bytes()) == 0;
}

inline bool bitwise_equal(const CsrMatrix& a, const CsrMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.nnz() == b.nnz() &&
         std::memcmp(a.row_ptr().data(), b.row_ptr().data(),
                     a.row_ptr().size_bytes()) == 0 &&
         std::memcmp(a.col_idx().data(), b.col_idx().data(),
                     a.col_idx().size_bytes()) == 0 &&
         std::memcmp(a.values().data(), b.values().data(),
                     a.values().size_bytes()) == 0;
}

inline float max_rel_error(const DenseMatrix& a, const DenseMatrix& b) {
  float worst = 0.0f;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float scale = std::max(std::fabs(x[i]), std::fabs(y[i]));
    if (scale > 0.0f) {
      worst = std::max(worst, std::fabs(x[i] - y[i]) / scale);
    }
  }
  return worst;
}

// A fixed 7-vertex, 12-edge directed graph used by the construction and
// round-trip tests.
inline std::vector<Triple> sample_graph_edges() {
  return {{0, 1, 1.0f}, {0, 3, 1.0f}, {1, 3, 1.0f}, {1, 4, 1.0f},
          {2, 5, 1.0f}, {3, 2, 1.0f}, {3, 4, 1.0f}, {4, 5, 1.0f},
          {5, 6, 1.0f}, {6, 0, 1.0f}, {6, 2, 1.0f}, {6, 4, 1.0f}};
}

}  // namespace semikern::testing
