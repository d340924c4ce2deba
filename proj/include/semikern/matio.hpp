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

#include <filesystem>
#include <iosfwd>

#include "semikern/matrix.hpp"

namespace semikern {

// Matrix Market exchange format, "real general" only. Sparse matrices map
// to the coordinate variant (1-based indices, one "row col value" line per
// nonzero, sorted by row then column); dense matrices map to the array
// variant (column-major value list). Values are written with 9 significant
// digits so binary32 round-trips exactly.

enum class MatrixFileKind { coordinate, array };

struct MatrixFileInfo {
  std::filesystem::path path;
  MatrixFileKind kind;
  index_t rows = 0;
  index_t cols = 0;
  std::size_t entries = 0;  // nnz for coordinate, rows*cols for array
};

MatrixFileInfo write_matrix(const Matrix& a, const std::filesystem::path& path);
MatrixFileInfo write_matrix(const Matrix& a, std::ostream& out);

/// Reads either variant back; coordinate files yield CSR, array files yield
/// dense. Throws ParseError with the offending 1-based line number on a
/// malformed header, out-of-bounds or duplicate index, bad token, extra
/// content, or truncation.
Matrix read_matrix(const std::filesystem::path& path);
Matrix read_matrix(std::istream& in);

}  // namespace semikern
