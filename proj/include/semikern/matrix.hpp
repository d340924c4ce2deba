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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include "semikern/semiring.hpp"

namespace semikern {

/// Build-wide index width for sparse storage; storage_bytes() reports it.
using index_t = std::uint32_t;
inline constexpr std::size_t kIndexWidth = sizeof(index_t);

struct Triple {
  index_t row;
  index_t col;
  Scalar value;
};

/// Row-major dense matrix; zeros are explicit.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols, Scalar fill = 0.0f);
  /// Adopts `data` (row-major); throws InvalidArgument on a size mismatch.
  DenseMatrix(index_t rows, index_t cols, std::vector<Scalar> data);

  static DenseMatrix identity(index_t n);

  index_t rows() const noexcept { return rows_; }
  index_t cols() const noexcept { return cols_; }

  Scalar operator()(index_t i, index_t j) const noexcept {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  Scalar& operator()(index_t i, index_t j) noexcept {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::span<const Scalar> row(index_t i) const noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * cols_, cols_};
  }
  std::span<Scalar> row(index_t i) noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * cols_, cols_};
  }

  std::span<const Scalar> data() const noexcept { return data_; }
  std::span<Scalar> data() noexcept { return data_; }

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Compressed-sparse-row matrix. Within each row the column indices are
/// strictly increasing, which fixes the accumulation order of every kernel.
/// Stored values are kept as-is: construction from triples drops entries
/// that are exactly 0.0, but results of operations are never re-pruned
/// (0.0 is not the zero of every semiring).
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Validating constructor: checks the row_ptr/col_idx invariants and
  /// throws InvalidArgument on any violation. Stored values are not
  /// inspected, so explicit zeros pass through.
  CsrMatrix(index_t rows, index_t cols, std::vector<index_t> row_ptr,
            std::vector<index_t> col_idx, std::vector<Scalar> values);

  /// Trusted constructor for kernels whose output is valid by construction.
  static CsrMatrix from_parts_unchecked(index_t rows, index_t cols,
                                        std::vector<index_t> row_ptr,
                                        std::vector<index_t> col_idx,
                                        std::vector<Scalar> values);

  index_t rows() const noexcept { return rows_; }
  index_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const index_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const index_t> col_idx() const noexcept { return col_idx_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  std::span<const index_t> row_cols(index_t i) const noexcept {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const Scalar> row_values(index_t i) const noexcept {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<index_t> row_ptr_ = {0};
  std::vector<index_t> col_idx_;
  std::vector<Scalar> values_;
};

/// Either representation behind uniform dimension accessors, so the forward
/// pass can take sparse or dense weights.
class Matrix {
 public:
  Matrix(CsrMatrix m) : rep_(std::move(m)) {}
  Matrix(DenseMatrix m) : rep_(std::move(m)) {}

  bool is_sparse() const noexcept {
    return std::holds_alternative<CsrMatrix>(rep_);
  }
  index_t rows() const noexcept;
  index_t cols() const noexcept;

  /// Throws Error when the matrix holds the other representation.
  const CsrMatrix& csr() const;
  const DenseMatrix& dense() const;

 private:
  std::variant<CsrMatrix, DenseMatrix> rep_;
};

// --- construction and conversion ------------------------------------------

/// Builds a CSR matrix from (row, col, value) triples in any order.
/// Entries with value exactly 0.0 are dropped. Throws InvalidArgument on an
/// out-of-range index or a duplicate coordinate.
CsrMatrix csr_from_triples(index_t rows, index_t cols,
                           std::span<const Triple> triples);
inline CsrMatrix csr_from_triples(index_t rows, index_t cols,
                                  std::initializer_list<Triple> triples) {
  return csr_from_triples(rows, cols,
                          std::span<const Triple>(triples.begin(), triples.size()));
}

/// Expands to dense, filling absent positions with `ambient_zero`
/// (0.0 in arithmetic contexts, -inf in max-plus contexts).
DenseMatrix to_dense(const CsrMatrix& a, Scalar ambient_zero);
DenseMatrix to_dense(const Matrix& a, Scalar ambient_zero);

/// Compresses a dense matrix, dropping entries exactly equal to 0.0.
CsrMatrix from_dense(const DenseMatrix& d);

/// Stored-entry count; for dense matrices, the number of entries != 0.0.
std::size_t nnz(const Matrix& a);

/// Exact byte footprint of the representation's arrays.
std::size_t storage_bytes(const Matrix& a);

/// Byte-count formulas, usable without materializing a matrix.
constexpr std::size_t csr_storage_bytes(index_t rows, std::size_t nnz_count) {
  return (static_cast<std::size_t>(rows) + 1) * kIndexWidth +
         nnz_count * (kIndexWidth + sizeof(Scalar));
}
constexpr std::size_t dense_storage_bytes(index_t rows, index_t cols) {
  return static_cast<std::size_t>(rows) * cols * sizeof(Scalar);
}

// --- element-wise operations ----------------------------------------------

// C(i,j) = A(i,j) (+) B(i,j). Operands must have equal dimensions. A position
// absent from a sparse operand contributes the semiring zero; positions
// absent from both operands are absent from a sparse result. The result is
// dense when either operand is dense, sparse when both are sparse.
Matrix ewise_add(const Matrix& a, const Matrix& b, const Semiring& s);

// C(i,j) = A(i,j) (x) B(i,j), same shape and representation rules. Under
// max-plus this is element-wise addition, which is how the bias add of the
// forward pass is expressed.
Matrix ewise_mul(const Matrix& a, const Matrix& b, const Semiring& s);

DenseMatrix ewise_add(const DenseMatrix& a, const DenseMatrix& b,
                      const Semiring& s);
DenseMatrix ewise_mul(const DenseMatrix& a, const DenseMatrix& b,
                      const Semiring& s);

// --- matrix multiply --------------------------------------------------------

// C(i,j) = (+)_k A(i,k) (x) B(k,j) over semiring s, A m-by-l and B l-by-n.
// When A is CSR only its stored entries contribute, which is sound by the
// multiplicative-annihilator property. For every output position the
// accumulation runs in ascending k, so results are bitwise reproducible and
// independent of the worker count. Supported shapes: CSR x dense (dense
// result), dense x dense (dense result), CSR x CSR (sparse result, row
// merge). dense x CSR is rejected.
Matrix mxm(const Matrix& a, const Matrix& b, const Semiring& s,
           int workers = 1);
DenseMatrix mxm(const CsrMatrix& a, const DenseMatrix& b, const Semiring& s,
                int workers = 1);
DenseMatrix mxm(const DenseMatrix& a, const DenseMatrix& b, const Semiring& s,
                int workers = 1);
CsrMatrix mxm(const CsrMatrix& a, const CsrMatrix& b, const Semiring& s,
              int workers = 1);
DenseMatrix mxm(const Matrix& a, const DenseMatrix& b, const Semiring& s,
                int workers = 1);

/// Plain dense float multiply: the fixed arithmetic baseline for the
/// sparse-vs-dense comparison. Cache-friendly i-k-j loop, no sparsity
/// checks, so its run time is independent of how many entries are zero.
/// Matches mxm over the arithmetic semiring to within kRelTol.
DenseMatrix dense_mxm_baseline(const DenseMatrix& a, const DenseMatrix& b,
                               int workers = 1);

}  // namespace semikern
