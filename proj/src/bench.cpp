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

#include "semikern/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <new>
#include <ostream>
#include <sstream>
#include <tuple>

#include "semikern/dnn.hpp"

namespace semikern {

std::string_view to_string(Impl impl) noexcept {
  return impl == Impl::sparse ? "sparse" : "dense";
}

void BenchConfig::validate() const {
  if (sizes.empty()) throw InvalidArgument("sweep needs at least one size");
  if (inverse_sparsities.empty()) {
    throw InvalidArgument("sweep needs at least one inverse sparsity");
  }
  if (workers.empty()) throw InvalidArgument("sweep needs a workers list");
  for (const int w : workers) {
    if (w < 1) throw InvalidArgument("workers must be >= 1");
  }
  if (repetitions < 3) throw InvalidArgument("repetitions must be >= 3");
  if (warmup < 1) throw InvalidArgument("warmup must be >= 1");
  if (layers < 1) throw InvalidArgument("layers must be >= 1");
  for (const index_t m : sizes) {
    for (const double is : inverse_sparsities) {
      GenSpec{m, is, batch, seed}.validate();
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats mean_stddev(const std::vector<double>& samples) {
  Stats s;
  for (const double x : samples) s.mean += x;
  s.mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (const double x : samples) ss += (x - s.mean) * (x - s.mean);
  if (samples.size() > 1) {
    s.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  }
  return s;
}

// Times `layers` chained steps per repetition, restarting from y0 each time;
// returns per-layer seconds. Warmup repetitions are discarded.
template <typename Step>
Stats time_step(const DenseMatrix& y0, index_t layers, int warmup,
                int repetitions, Step step) {
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (int rep = 0; rep < warmup + repetitions; ++rep) {
    DenseMatrix y = y0;
    const auto t0 = Clock::now();
    for (index_t l = 0; l < layers; ++l) y = step(y);
    const double elapsed = seconds_since(t0);
    if (rep >= warmup) samples.push_back(elapsed / layers);
  }
  return mean_stddev(samples);
}

bool record_order(const BenchRecord& a, const BenchRecord& b) {
  return std::tie(a.m, a.inverse_sparsity, a.implementation, a.workers) <
         std::tie(b.m, b.inverse_sparsity, b.implementation, b.workers);
}

std::vector<index_t> sorted_unique(std::vector<index_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SweepResult run_sweep(const BenchConfig& config, std::ostream* progress) {
  config.validate();
  SweepResult result;

  const auto sizes = sorted_unique(config.sizes);
  const auto sparsities = sorted_unique(config.inverse_sparsities);
  auto workers = config.workers;
  std::sort(workers.begin(), workers.end());
  workers.erase(std::unique(workers.begin(), workers.end()), workers.end());

  for (const index_t m : sizes) {
    for (const double is : sparsities) {
      const GenSpec spec{m, is, config.batch, config.seed};
      const CsrMatrix w = gen_weight(spec);
      const std::vector<Scalar> bias = gen_bias(spec, config.bias_mode);
      const DenseMatrix y0 = gen_input(spec);
      const std::size_t weight_nnz = w.nnz();
      const std::size_t sparse_bytes = storage_bytes(Matrix(w));

      // dense leg: the same logical weights with zeros explicit
      for (const int wk : workers) {
        try {
          const DenseMatrix wd = to_dense(w, 0.0f);
          const Stats s = time_step(
              y0, config.layers, config.warmup, config.repetitions,
              [&](const DenseMatrix& y) {
                return dense_layer_step(wd, bias, y, wk);
              });
          result.records.push_back({m, is, Impl::dense, wk, s.mean, s.stddev,
                                    weight_nnz, dense_storage_bytes(m, m)});
          if (progress) {
            *progress << "m=" << m << " is=" << is << " dense workers=" << wk
                      << " mean=" << s.mean << "s\n";
          }
        } catch (const std::bad_alloc&) {
          result.skipped.push_back(
              {m, is, Impl::dense, wk,
               "allocation of " + std::to_string(dense_storage_bytes(m, m)) +
                   " dense bytes failed"});
          if (progress) {
            *progress << "m=" << m << " is=" << is << " dense workers=" << wk
                      << " skipped (allocation failed)\n";
          }
        }
      }

      const Matrix wm(w);
      for (const int wk : workers) {
        const DenseMatrix relu_zero(m, config.batch, 0.0f);
        const ForwardOptions opt{wk, false};
        const Stats s = time_step(y0, config.layers, config.warmup,
                                  config.repetitions, [&](const DenseMatrix& y) {
                                    return layer_step(wm, bias, y, relu_zero, opt);
                                  });
        result.records.push_back({m, is, Impl::sparse, wk, s.mean, s.stddev,
                                  weight_nnz, sparse_bytes});
        if (progress) {
          *progress << "m=" << m << " is=" << is << " sparse workers=" << wk
                    << " mean=" << s.mean << "s\n";
        }
      }
    }
  }

  std::sort(result.records.begin(), result.records.end(), record_order);
  return result;
}

namespace {

const BenchRecord* find_record(std::span<const BenchRecord> records, index_t m,
                               Impl impl, double is) {
  for (const BenchRecord& r : records) {
    if (r.m == m && r.implementation == impl && r.inverse_sparsity == is &&
        r.workers == 1) {
      return &r;
    }
  }
  return nullptr;
}

double require_time(std::span<const BenchRecord> records, index_t m, Impl impl,
                    double is) {
  const BenchRecord* r = find_record(records, m, impl, is);
  if (r == nullptr) {
    std::ostringstream msg;
    msg << "analyze: no " << to_string(impl)
        << " record at inverse sparsity " << is << " for m=" << m
        << " (workers=1)";
    throw Error(msg.str());
  }
  return r->mean_layer_seconds;
}

}  // namespace

std::vector<CurveParams> analyze(std::span<const BenchRecord> records,
                                 index_t reference_m) {
  std::vector<index_t> sizes;
  for (const BenchRecord& r : records) sizes.push_back(r.m);
  sizes = sorted_unique(std::move(sizes));
  if (sizes.empty()) throw Error("analyze: no records");

  std::vector<CurveParams> params;
  for (const index_t m : sizes) {
    double max_is = 0.0;
    for (const BenchRecord& r : records) {
      if (r.m == m && r.implementation == Impl::sparse && r.workers == 1) {
        max_is = std::max(max_is, r.inverse_sparsity);
      }
    }
    if (max_is == 0.0) {
      throw Error("analyze: no sparse records for m=" + std::to_string(m) +
                  " (workers=1)");
    }
    const double t_sparse_1 = require_time(records, m, Impl::sparse, 1.0);
    const double t_sparse_4 = require_time(records, m, Impl::sparse, 4.0);
    const double t_sparse_sat = require_time(records, m, Impl::sparse, max_is);
    const double t_dense_1 = require_time(records, m, Impl::dense, 1.0);

    const double elements = static_cast<double>(m) * m;
    CurveParams p;
    p.m = m;
    p.ratio_dense = t_sparse_1 / t_dense_1;
    // Time difference between the full matrix and the quarter-full matrix,
    // divided by the nonzeros that difference represents.
    p.slope = (t_sparse_1 - t_sparse_4) / (0.75 * elements);
    p.saturation = t_sparse_sat / static_cast<double>(m);
    p.blas_per_element = t_dense_1 / elements;
    params.push_back(p);
  }

  const auto ref = std::find_if(params.begin(), params.end(),
                                [&](const CurveParams& p) { return p.m == reference_m; });
  if (ref == params.end()) {
    throw Error("analyze: reference size m=" + std::to_string(reference_m) +
                " has no records");
  }
  const CurveParams r = *ref;
  for (CurveParams& p : params) {
    p.ratio_dense_normalized = p.ratio_dense / r.ratio_dense;
    p.slope_normalized = p.slope / r.slope;
    p.saturation_normalized = p.saturation / r.saturation;
    p.blas_per_element_normalized = p.blas_per_element / r.blas_per_element;
  }
  return params;
}

// --- CSV ---------------------------------------------------------------------

namespace {

constexpr std::string_view kRecordHeader =
    "m,inverse_sparsity,implementation,workers,mean_layer_seconds,"
    "stddev_seconds,nnz,matrix_bytes";

constexpr std::string_view kParamsHeader =
    "m,ratio_dense,slope,saturation,blas_per_element,ratio_dense_normalized,"
    "slope_normalized,saturation_normalized,blas_per_element_normalized";

// Shortest representation that parses back to the identical double.
std::string number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view token, std::size_t line) {
  double v{};
  const auto r =
      std::from_chars(token.data(), token.data() + token.size(), v,
                      std::chars_format::general);
  if (r.ec != std::errc{} || r.ptr != token.data() + token.size()) {
    throw ParseError(line, "malformed number '" + std::string(token) + "'");
  }
  return v;
}

template <typename T>
T parse_integer(std::string_view token, std::size_t line) {
  T v{};
  const auto r = std::from_chars(token.data(), token.data() + token.size(), v);
  if (r.ec != std::errc{} || r.ptr != token.data() + token.size()) {
    throw ParseError(line, "malformed integer '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

}  // namespace

void write_records_csv(std::span<const BenchRecord> records,
                       std::ostream& out) {
  out << kRecordHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.m << ',' << number(r.inverse_sparsity) << ','
        << to_string(r.implementation) << ',' << r.workers << ','
        << number(r.mean_layer_seconds) << ',' << number(r.stddev_seconds)
        << ',' << r.nnz << ',' << r.matrix_bytes << '\n';
  }
  if (!out) throw Error("CSV write failed");
}

void write_records_csv(std::span<const BenchRecord> records,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_records_csv(records, out);
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty CSV");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) {
    throw ParseError(lineno, "unexpected CSV header '" + line + "'");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 8) {
      throw ParseError(lineno, "expected 8 fields, found " +
                                   std::to_string(fields.size()));
    }
    BenchRecord r;
    r.m = parse_integer<index_t>(fields[0], lineno);
    r.inverse_sparsity = parse_double(fields[1], lineno);
    if (fields[2] == "sparse") {
      r.implementation = Impl::sparse;
    } else if (fields[2] == "dense") {
      r.implementation = Impl::dense;
    } else {
      throw ParseError(lineno, "unknown implementation '" +
                                   std::string(fields[2]) + "'");
    }
    r.workers = parse_integer<int>(fields[3], lineno);
    r.mean_layer_seconds = parse_double(fields[4], lineno);
    r.stddev_seconds = parse_double(fields[5], lineno);
    r.nnz = parse_integer<std::size_t>(fields[6], lineno);
    r.matrix_bytes = parse_integer<std::size_t>(fields[7], lineno);
    records.push_back(r);
  }
  return records;
}

std::vector<BenchRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return read_records_csv(in);
}

void write_params_csv(std::span<const CurveParams> params, std::ostream& out) {
  out << kParamsHeader << '\n';
  for (const CurveParams& p : params) {
    out << p.m << ',' << number(p.ratio_dense) << ',' << number(p.slope) << ','
        << number(p.saturation) << ',' << number(p.blas_per_element) << ','
        << number(p.ratio_dense_normalized) << ','
        << number(p.slope_normalized) << ','
        << number(p.saturation_normalized) << ','
        << number(p.blas_per_element_normalized) << '\n';
  }
  if (!out) throw Error("CSV write failed");
}

void write_params_csv(std::span<const CurveParams> params,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_params_csv(params, out);
}

}  // namespace semikern
