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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semikern/matgen.hpp"

namespace semikern {

enum class Impl { sparse, dense };

std::string_view to_string(Impl impl) noexcept;

/// One timed sweep. The timed unit is a single forward layer step
/// (multiply + bias + ReLU); `layers` consecutive steps form one sample and
/// the recorded time is per layer. Warmup runs are excluded from the
/// statistics.
struct BenchConfig {
  std::vector<index_t> sizes;
  std::vector<double> inverse_sparsities;
  index_t batch = 64;
  index_t layers = 1;
  std::vector<int> workers = {1};
  int repetitions = 5;
  int warmup = 1;
  std::uint64_t seed = 0;
  BiasMode bias_mode = BiasMode::zero;
  std::filesystem::path output;

  /// repetitions >= 3, warmup >= 1, non-empty sweep lists, valid GenSpecs.
  void validate() const;
};

struct BenchRecord {
  index_t m = 0;
  double inverse_sparsity = 1.0;
  Impl implementation = Impl::sparse;
  int workers = 1;
  double mean_layer_seconds = 0.0;
  double stddev_seconds = 0.0;
  std::size_t nnz = 0;
  std::size_t matrix_bytes = 0;
};

/// A configuration that could not run (an oversized dense allocation, for
/// example). Reported alongside the records instead of crashing the sweep;
/// the CSV columns are pinned to the BenchRecord fields, so skips go to
/// diagnostics rather than into the file.
struct SkippedRun {
  index_t m = 0;
  double inverse_sparsity = 1.0;
  Impl implementation = Impl::sparse;
  int workers = 1;
  std::string reason;
};

struct SweepResult {
  std::vector<BenchRecord> records;
  std::vector<SkippedRun> skipped;
};

/// Runs the full (size x inverse sparsity x implementation x workers) grid.
/// Matrices are generated from the seed once per (size, sparsity) cell; the
/// dense leg runs on the explicit-zero dense form of the same weights.
/// Records come back sorted by (m, inverse_sparsity, implementation,
/// workers). When `progress` is non-null, one line per finished cell is
/// written to it. Timed regions contain no I/O.
SweepResult run_sweep(const BenchConfig& config, std::ostream* progress = nullptr);

/// Shape parameters of the timing curves, per matrix size:
///   ratio_dense      sparse/dense time at inverse sparsity 1
///   slope            per-nonzero sparse cost,
///                    (T_sparse(1) - T_sparse(4)) / (0.75 * m^2)
///   saturation       near-empty sparse cost per row,
///                    T_sparse(max swept inverse sparsity) / m
///   blas_per_element dense cost per element, T_dense(1) / m^2
/// Each is also reported normalized to its value at a reference size.
struct CurveParams {
  index_t m = 0;
  double ratio_dense = 0.0;
  double slope = 0.0;
  double saturation = 0.0;
  double blas_per_element = 0.0;
  double ratio_dense_normalized = 0.0;
  double slope_normalized = 0.0;
  double saturation_normalized = 0.0;
  double blas_per_element_normalized = 0.0;
};

/// Computes CurveParams for every size present in `records`, using the
/// workers == 1 rows. Requires sparse times at inverse sparsity 1 and 4 and
/// at the per-size maximum, plus a dense time at inverse sparsity 1; throws
/// Error naming the missing point otherwise.
std::vector<CurveParams> analyze(std::span<const BenchRecord> records,
                                 index_t reference_m);

// CSV: UTF-8, comma-separated, header row, '.' decimal separator, numbers
// in round-trip precision, one line per record in the sweep ordering.
void write_records_csv(std::span<const BenchRecord> records, std::ostream& out);
void write_records_csv(std::span<const BenchRecord> records,
                       const std::filesystem::path& path);
std::vector<BenchRecord> read_records_csv(std::istream& in);
std::vector<BenchRecord> read_records_csv(const std::filesystem::path& path);

void write_params_csv(std::span<const CurveParams> params, std::ostream& out);
void write_params_csv(std::span<const CurveParams> params,
                      const std::filesystem::path& path);

}  // namespace semikern
