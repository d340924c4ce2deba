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

#include "semikern/matrix.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "detail/parallel.hpp"

namespace semikern {

namespace {

std::string dim_string(index_t r, index_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const char* op, index_t ar, index_t ac, index_t br,
                        index_t bc) {
  if (ar != br || ac != bc) {
    throw DimensionError(std::string(op) + ": operands " + dim_string(ar, ac) +
                         " and " + dim_string(br, bc) + " differ in shape");
  }
}

void require_inner(const char* op, index_t ac, index_t br) {
  if (ac != br) {
    throw DimensionError(std::string(op) + ": inner dimensions " +
                         std::to_string(ac) + " and " + std::to_string(br) +
                         " do not match");
  }
}

constexpr std::size_t kMaxNnz = std::numeric_limits<index_t>::max();

}  // namespace

// --- DenseMatrix ------------------------------------------------------------

DenseMatrix::DenseMatrix(index_t rows, index_t cols, Scalar fill)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, fill) {}

DenseMatrix::DenseMatrix(index_t rows, index_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw InvalidArgument("dense data length " + std::to_string(data_.size()) +
                          " does not equal rows*cols for " +
                          dim_string(rows, cols));
  }
}

DenseMatrix DenseMatrix::identity(index_t n) {
  DenseMatrix m(n, n, 0.0f);
  for (index_t i = 0; i < n; ++i) m(i, i) = 1.0f;
  return m;
}

// --- CsrMatrix --------------------------------------------------------------

CsrMatrix CsrMatrix::from_parts_unchecked(index_t rows, index_t cols,
                                          std::vector<index_t> row_ptr,
                                          std::vector<index_t> col_idx,
                                          std::vector<Scalar> values) {
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

CsrMatrix::CsrMatrix(index_t rows, index_t cols, std::vector<index_t> row_ptr,
                     std::vector<index_t> col_idx, std::vector<Scalar> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != static_cast<std::size_t>(rows) + 1) {
    throw InvalidArgument("row_ptr length must be rows+1");
  }
  if (row_ptr_.front() != 0) throw InvalidArgument("row_ptr[0] must be 0");
  if (row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
    throw InvalidArgument("row_ptr[rows], col_idx and values disagree on nnz");
  }
  for (index_t i = 0; i < rows; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw InvalidArgument("row_ptr must be non-decreasing");
    }
    for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= cols) {
        throw InvalidArgument("column index " + std::to_string(col_idx_[k]) +
                              " out of range in row " + std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k - 1] >= col_idx_[k]) {
        throw InvalidArgument(
            "column indices must be strictly increasing within row " +
            std::to_string(i));
      }
    }
  }
}

// --- Matrix -----------------------------------------------------------------

index_t Matrix::rows() const noexcept {
  return is_sparse() ? std::get<CsrMatrix>(rep_).rows()
                     : std::get<DenseMatrix>(rep_).rows();
}

index_t Matrix::cols() const noexcept {
  return is_sparse() ? std::get<CsrMatrix>(rep_).cols()
                     : std::get<DenseMatrix>(rep_).cols();
}

const CsrMatrix& Matrix::csr() const {
  if (!is_sparse()) throw Error("matrix holds a dense representation");
  return std::get<CsrMatrix>(rep_);
}

const DenseMatrix& Matrix::dense() const {
  if (is_sparse()) throw Error("matrix holds a sparse representation");
  return std::get<DenseMatrix>(rep_);
}

// --- construction and conversion --------------------------------------------

CsrMatrix csr_from_triples(index_t rows, index_t cols,
                           std::span<const Triple> triples) {
  for (const Triple& t : triples) {
    if (t.row >= rows || t.col >= cols) {
      throw InvalidArgument("triple (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) + ") outside " +
                            dim_string(rows, cols));
    }
  }
  std::vector<Triple> sorted(triples.begin(), triples.end());
  std::sort(sorted.begin(), sorted.end(), [](const Triple& a, const Triple& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k - 1].row == sorted[k].row &&
        sorted[k - 1].col == sorted[k].col) {
      throw InvalidArgument("duplicate coordinate (" +
                            std::to_string(sorted[k].row) + ", " +
                            std::to_string(sorted[k].col) + ")");
    }
  }
  if (sorted.size() > kMaxNnz) {
    throw InvalidArgument("nnz exceeds the 32-bit index range");
  }

  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(rows) + 1);
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  col_idx.reserve(sorted.size());
  values.reserve(sorted.size());

  row_ptr.push_back(0);
  std::size_t k = 0;
  for (index_t i = 0; i < rows; ++i) {
    for (; k < sorted.size() && sorted[k].row == i; ++k) {
      if (sorted[k].value == 0.0f) continue;  // elide exact zeros
      col_idx.push_back(sorted[k].col);
      values.push_back(sorted[k].value);
    }
    row_ptr.push_back(static_cast<index_t>(col_idx.size()));
  }
  return CsrMatrix::from_parts_unchecked(rows, cols, std::move(row_ptr),
                                         std::move(col_idx), std::move(values));
}

DenseMatrix to_dense(const CsrMatrix& a, Scalar ambient_zero) {
  DenseMatrix d(a.rows(), a.cols(), ambient_zero);
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    Scalar* out = d.row(i).data();
    for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] = vals[k];
  }
  return d;
}

DenseMatrix to_dense(const Matrix& a, Scalar ambient_zero) {
  return a.is_sparse() ? to_dense(a.csr(), ambient_zero) : a.dense();
}

CsrMatrix from_dense(const DenseMatrix& d) {
  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(d.rows()) + 1);
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  row_ptr.push_back(0);
  for (index_t i = 0; i < d.rows(); ++i) {
    const Scalar* row = d.row(i).data();
    for (index_t j = 0; j < d.cols(); ++j) {
      if (row[j] != 0.0f) {
        col_idx.push_back(j);
        values.push_back(row[j]);
      }
    }
    if (col_idx.size() > kMaxNnz) {
      throw InvalidArgument("nnz exceeds the 32-bit index range");
    }
    row_ptr.push_back(static_cast<index_t>(col_idx.size()));
  }
  return CsrMatrix::from_parts_unchecked(d.rows(), d.cols(), std::move(row_ptr),
                                         std::move(col_idx), std::move(values));
}

std::size_t nnz(const Matrix& a) {
  if (a.is_sparse()) return a.csr().nnz();
  std::size_t count = 0;
  for (Scalar v : a.dense().data()) count += v != 0.0f;
  return count;
}

std::size_t storage_bytes(const Matrix& a) {
  if (a.is_sparse()) {
    const CsrMatrix& m = a.csr();
    return m.row_ptr().size_bytes() + m.col_idx().size_bytes() +
           m.values().size_bytes();
  }
  return a.dense().data().size_bytes();
}

// --- element-wise kernels -----------------------------------------------------

namespace {

// Positions absent from a sparse operand contribute the semiring zero;
// positions absent from both stay absent in a sparse result. Results are
// not re-pruned: a combined value exactly equal to the zero scalar is kept
// where at least one operand stored something.
template <typename Combine>
CsrMatrix merge_sparse(const CsrMatrix& a, const CsrMatrix& b, Scalar zero,
                       Combine combine) {
  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(a.rows()) + 1);
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  col_idx.reserve(a.nnz() + b.nnz());
  values.reserve(a.nnz() + b.nnz());

  row_ptr.push_back(0);
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto ac = a.row_cols(i);
    const auto av = a.row_values(i);
    const auto bc = b.row_cols(i);
    const auto bv = b.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ac.size() || q < bc.size()) {
      if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
        col_idx.push_back(ac[p]);
        values.push_back(combine(av[p], zero));
        ++p;
      } else if (p == ac.size() || bc[q] < ac[p]) {
        col_idx.push_back(bc[q]);
        values.push_back(combine(zero, bv[q]));
        ++q;
      } else {
        col_idx.push_back(ac[p]);
        values.push_back(combine(av[p], bv[q]));
        ++p;
        ++q;
      }
    }
    row_ptr.push_back(static_cast<index_t>(col_idx.size()));
  }
  return CsrMatrix::from_parts_unchecked(a.rows(), a.cols(), std::move(row_ptr),
                                         std::move(col_idx), std::move(values));
}

// Scatters row i of a sparse operand into `buf` (pre-filled with zero by the
// caller) and clears it again afterwards via the returned column list.
template <typename Combine>
DenseMatrix ewise_mixed(const CsrMatrix& sp, const DenseMatrix& dn,
                        Scalar zero, bool sparse_is_left, Combine combine) {
  DenseMatrix c(dn.rows(), dn.cols());
  std::vector<Scalar> buf(dn.cols(), zero);
  for (index_t i = 0; i < dn.rows(); ++i) {
    const auto cols = sp.row_cols(i);
    const auto vals = sp.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) buf[cols[k]] = vals[k];
    const Scalar* drow = dn.row(i).data();
    Scalar* crow = c.row(i).data();
    for (index_t j = 0; j < dn.cols(); ++j) {
      crow[j] = sparse_is_left ? combine(buf[j], drow[j])
                               : combine(drow[j], buf[j]);
    }
    for (std::size_t k = 0; k < cols.size(); ++k) buf[cols[k]] = zero;
  }
  return c;
}

template <typename Ops, bool kUseMul>
Scalar combine_one(Scalar x, Scalar y) {
  if constexpr (kUseMul) {
    return Ops::mul(x, y);
  } else {
    return Ops::add(x, y);
  }
}

template <bool kUseMul>
Matrix ewise_impl(const char* op, const Matrix& a, const Matrix& b,
                  const Semiring& s) {
  require_same_shape(op, a.rows(), a.cols(), b.rows(), b.cols());
  return dispatch(s.kind, [&](auto ops) -> Matrix {
    using Ops = decltype(ops);
    const auto combine = combine_one<Ops, kUseMul>;
    if (a.is_sparse() && b.is_sparse()) {
      return Matrix(merge_sparse(a.csr(), b.csr(), Ops::zero, combine));
    }
    if (a.is_sparse()) {
      return Matrix(ewise_mixed(a.csr(), b.dense(), Ops::zero, true, combine));
    }
    if (b.is_sparse()) {
      return Matrix(ewise_mixed(b.csr(), a.dense(), Ops::zero, false, combine));
    }
    const DenseMatrix& da = a.dense();
    const DenseMatrix& db = b.dense();
    DenseMatrix c(da.rows(), da.cols());
    const auto x = da.data();
    const auto y = db.data();
    const auto out = c.data();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      out[idx] = combine(x[idx], y[idx]);
    }
    return Matrix(std::move(c));
  });
}

}  // namespace

Matrix ewise_add(const Matrix& a, const Matrix& b, const Semiring& s) {
  return ewise_impl<false>("ewise_add", a, b, s);
}

Matrix ewise_mul(const Matrix& a, const Matrix& b, const Semiring& s) {
  return ewise_impl<true>("ewise_mul", a, b, s);
}

DenseMatrix ewise_add(const DenseMatrix& a, const DenseMatrix& b,
                      const Semiring& s) {
  require_same_shape("ewise_add", a.rows(), a.cols(), b.rows(), b.cols());
  DenseMatrix c(a.rows(), a.cols());
  dispatch(s.kind, [&](auto ops) {
    using Ops = decltype(ops);
    const auto x = a.data();
    const auto y = b.data();
    const auto out = c.data();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      out[idx] = Ops::add(x[idx], y[idx]);
    }
  });
  return c;
}

DenseMatrix ewise_mul(const DenseMatrix& a, const DenseMatrix& b,
                      const Semiring& s) {
  require_same_shape("ewise_mul", a.rows(), a.cols(), b.rows(), b.cols());
  DenseMatrix c(a.rows(), a.cols());
  dispatch(s.kind, [&](auto ops) {
    using Ops = decltype(ops);
    const auto x = a.data();
    const auto y = b.data();
    const auto out = c.data();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      out[idx] = Ops::mul(x[idx], y[idx]);
    }
  });
  return c;
}

// --- matrix multiply ----------------------------------------------------------

namespace {

// SpMM: stream the stored entries of each A row in ascending column order and
// fold them into a zero-initialized output row. Per output position the
// accumulation is a left fold in ascending k, the same order as the dense
// kernel below, so sparse and dense runs agree bitwise wherever the scalar
// ops do.
template <typename Ops>
DenseMatrix mxm_csr_dense(const CsrMatrix& a, const DenseMatrix& b,
                          int workers) {
  const index_t n = b.cols();
  DenseMatrix c(a.rows(), n, Ops::zero);
  detail::parallel_row_blocks(
      a.rows(), workers, [&](std::size_t, index_t begin, index_t end) {
        for (index_t i = begin; i < end; ++i) {
          Scalar* crow = c.row(i).data();
          const auto cols = a.row_cols(i);
          const auto vals = a.row_values(i);
          for (std::size_t k = 0; k < cols.size(); ++k) {
            const Scalar av = vals[k];
            const Scalar* brow = b.row(cols[k]).data();
            for (index_t j = 0; j < n; ++j) {
              crow[j] = Ops::add(crow[j], Ops::mul(av, brow[j]));
            }
          }
        }
      });
  return c;
}

template <typename Ops>
DenseMatrix mxm_dense_dense(const DenseMatrix& a, const DenseMatrix& b,
                            int workers) {
  const index_t l = a.cols();
  const index_t n = b.cols();
  DenseMatrix c(a.rows(), n, Ops::zero);
  detail::parallel_row_blocks(
      a.rows(), workers, [&](std::size_t, index_t begin, index_t end) {
        for (index_t i = begin; i < end; ++i) {
          Scalar* crow = c.row(i).data();
          const Scalar* arow = a.row(i).data();
          for (index_t k = 0; k < l; ++k) {
            const Scalar av = arow[k];
            const Scalar* brow = b.row(k).data();
            for (index_t j = 0; j < n; ++j) {
              crow[j] = Ops::add(crow[j], Ops::mul(av, brow[j]));
            }
          }
        }
      });
  return c;
}

// Row-merge SpGEMM with a per-worker sparse accumulator. Output positions
// are the ones touched by at least one stored (A, B) pair; their values
// fold in ascending k like every other kernel.
template <typename Ops>
CsrMatrix mxm_csr_csr(const CsrMatrix& a, const CsrMatrix& b, int workers) {
  const index_t n = b.cols();
  const auto blocks = detail::row_blocks(a.rows(), workers);

  struct Block {
    std::vector<index_t> row_len;
    std::vector<index_t> cols;
    std::vector<Scalar> vals;
  };
  std::vector<Block> out(blocks.size());

  detail::parallel_row_blocks(
      a.rows(), workers, [&](std::size_t bi, index_t begin, index_t end) {
        Block& blk = out[bi];
        blk.row_len.reserve(end - begin);
        std::vector<Scalar> acc(n, Ops::zero);
        std::vector<bool> touched(n, false);
        std::vector<index_t> touched_cols;
        for (index_t i = begin; i < end; ++i) {
          touched_cols.clear();
          const auto acs = a.row_cols(i);
          const auto avs = a.row_values(i);
          for (std::size_t p = 0; p < acs.size(); ++p) {
            const Scalar av = avs[p];
            const index_t k = acs[p];
            const auto bcs = b.row_cols(k);
            const auto bvs = b.row_values(k);
            for (std::size_t q = 0; q < bcs.size(); ++q) {
              const index_t j = bcs[q];
              if (!touched[j]) {
                touched[j] = true;
                touched_cols.push_back(j);
              }
              acc[j] = Ops::add(acc[j], Ops::mul(av, bvs[q]));
            }
          }
          std::sort(touched_cols.begin(), touched_cols.end());
          for (const index_t j : touched_cols) {
            blk.cols.push_back(j);
            blk.vals.push_back(acc[j]);
            acc[j] = Ops::zero;
            touched[j] = false;
          }
          blk.row_len.push_back(static_cast<index_t>(touched_cols.size()));
        }
      });

  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(a.rows()) + 1);
  std::vector<index_t> col_idx;
  std::vector<Scalar> values;
  std::size_t total = 0;
  for (const Block& blk : out) total += blk.cols.size();
  if (total > kMaxNnz) {
    throw InvalidArgument("mxm result nnz exceeds the 32-bit index range");
  }
  col_idx.reserve(total);
  values.reserve(total);
  row_ptr.push_back(0);
  for (const Block& blk : out) {
    for (const index_t len : blk.row_len) {
      row_ptr.push_back(row_ptr.back() + len);
    }
    col_idx.insert(col_idx.end(), blk.cols.begin(), blk.cols.end());
    values.insert(values.end(), blk.vals.begin(), blk.vals.end());
  }
  return CsrMatrix::from_parts_unchecked(a.rows(), b.cols(), std::move(row_ptr),
                                         std::move(col_idx), std::move(values));
}

}  // namespace

DenseMatrix mxm(const CsrMatrix& a, const DenseMatrix& b, const Semiring& s,
                int workers) {
  require_inner("mxm", a.cols(), b.rows());
  return dispatch(s.kind, [&](auto ops) {
    return mxm_csr_dense<decltype(ops)>(a, b, workers);
  });
}

DenseMatrix mxm(const DenseMatrix& a, const DenseMatrix& b, const Semiring& s,
                int workers) {
  require_inner("mxm", a.cols(), b.rows());
  return dispatch(s.kind, [&](auto ops) {
    return mxm_dense_dense<decltype(ops)>(a, b, workers);
  });
}

CsrMatrix mxm(const CsrMatrix& a, const CsrMatrix& b, const Semiring& s,
              int workers) {
  require_inner("mxm", a.cols(), b.rows());
  return dispatch(s.kind, [&](auto ops) {
    return mxm_csr_csr<decltype(ops)>(a, b, workers);
  });
}

DenseMatrix mxm(const Matrix& a, const DenseMatrix& b, const Semiring& s,
                int workers) {
  return a.is_sparse() ? mxm(a.csr(), b, s, workers)
                       : mxm(a.dense(), b, s, workers);
}

Matrix mxm(const Matrix& a, const Matrix& b, const Semiring& s, int workers) {
  if (a.is_sparse() && b.is_sparse()) {
    return Matrix(mxm(a.csr(), b.csr(), s, workers));
  }
  if (a.is_sparse()) return Matrix(mxm(a.csr(), b.dense(), s, workers));
  if (!b.is_sparse()) return Matrix(mxm(a.dense(), b.dense(), s, workers));
  throw Error("mxm: dense-by-sparse is not supported; densify the right operand");
}

DenseMatrix dense_mxm_baseline(const DenseMatrix& a, const DenseMatrix& b,
                               int workers) {
  require_inner("dense_mxm_baseline", a.cols(), b.rows());
  const index_t l = a.cols();
  const index_t n = b.cols();
  DenseMatrix c(a.rows(), n, 0.0f);
  detail::parallel_row_blocks(
      a.rows(), workers, [&](std::size_t, index_t begin, index_t end) {
        for (index_t i = begin; i < end; ++i) {
          Scalar* crow = c.row(i).data();
          const Scalar* arow = a.row(i).data();
          for (index_t k = 0; k < l; ++k) {
            const Scalar av = arow[k];
            const Scalar* brow = b.row(k).data();
            for (index_t j = 0; j < n; ++j) {
              crow[j] += av * brow[j];
            }
          }
        }
      });
  return c;
}

}  // namespace semikern
