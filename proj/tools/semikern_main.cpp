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

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semikern/bench.hpp"
#include "semikern/dnn.hpp"
#include "semikern/matio.hpp"
#include "semikern/rng.hpp"

namespace {

using namespace semikern;

BiasMode bias_mode_from(const std::string& name) {
  if (name == "zero") return BiasMode::zero;
  if (name == "uniform01") return BiasMode::uniform01;
  throw InvalidArgument("unknown bias mode '" + name +
                        "' (expected zero|uniform01)");
}

// Layer k of a multi-layer model gets its own weight/bias seed, split off
// the base seed; the input batch uses the base seed directly.
std::uint64_t layer_seed(std::uint64_t seed, index_t layer) {
  return SplitMix64::at(seed, 1000 + layer);
}

DnnModel build_model(index_t m, index_t layers, double inverse_sparsity,
                     index_t batch, std::uint64_t seed, BiasMode bias_mode) {
  std::vector<Matrix> weights;
  std::vector<std::vector<Scalar>> biases;
  for (index_t k = 0; k < layers; ++k) {
    const GenSpec spec{m, inverse_sparsity, batch, layer_seed(seed, k)};
    weights.emplace_back(gen_weight(spec));
    biases.push_back(gen_bias(spec, bias_mode));
  }
  return DnnModel(std::move(weights), std::move(biases));
}

int run_sweep_cmd(const BenchConfig& config) {
  const SweepResult result = run_sweep(config, &std::cerr);
  write_records_csv(result.records, config.output);
  for (const SkippedRun& s : result.skipped) {
    std::cerr << "skipped: m=" << s.m << " is=" << s.inverse_sparsity << " "
              << to_string(s.implementation) << " workers=" << s.workers
              << " (" << s.reason << ")\n";
  }
  std::cout << "wrote " << result.records.size() << " records to "
            << config.output.string() << "\n";
  return 0;
}

int run_verify(index_t m, index_t layers, double inverse_sparsity,
               index_t batch, std::uint64_t seed, BiasMode bias_mode,
               int workers) {
  const DnnModel model =
      build_model(m, layers, inverse_sparsity, batch, seed, bias_mode);
  const Batch input = gen_input(GenSpec{m, 1.0, batch, seed});
  const Batch semiring_out = relu_forward(model, input, {workers, false});
  const Batch dense_out = dense_relu_forward(model, input);

  float max_rel = 0.0f;
  const auto a = semiring_out.data();
  const auto b = dense_out.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const float scale = std::max(std::fabs(a[i]), std::fabs(b[i]));
    if (scale > 0.0f) {
      max_rel = std::max(max_rel, std::fabs(a[i] - b[i]) / scale);
    }
  }
  std::cout << "m=" << m << " layers=" << layers
            << " inverse_sparsity=" << inverse_sparsity << " batch=" << batch
            << " max relative error=" << max_rel << "\n";
  if (max_rel > kRelTol) {
    std::cerr << "verify FAILED: max relative error " << max_rel << " > "
              << kRelTol << "\n";
    return 1;
  }
  std::cout << "verify OK\n";
  return 0;
}

int run_laws(const std::string& name, std::size_t samples, std::uint64_t seed) {
  const Semiring s = semiring_by_name(name);
  const LawReport report = check_laws(s, samples, seed);
  std::cout << "semiring " << report.semiring << ", " << report.samples
            << " samples, " << (report.exact ? "exact" : "tolerance 1e-5")
            << "\n";
  for (const LawResult& law : report.laws) {
    std::cout << "  " << law.law << ": " << (law.passed ? "pass" : "FAIL");
    if (!law.passed) {
      std::cout << " (" << law.failures << " failures; first at a=" << law.witness[0]
                << " b=" << law.witness[1] << " c=" << law.witness[2]
                << ": lhs=" << law.lhs << " rhs=" << law.rhs << ")";
    }
    std::cout << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

int run_gen(const std::string& kind, index_t m, double inverse_sparsity,
            index_t batch, std::uint64_t seed, BiasMode bias_mode,
            const std::string& out) {
  const GenSpec spec{m, inverse_sparsity, batch, seed};
  MatrixFileInfo info;
  if (kind == "weight") {
    info = write_matrix(Matrix(gen_weight(spec)), out);
  } else if (kind == "input") {
    info = write_matrix(Matrix(gen_input(spec)), out);
  } else if (kind == "bias") {
    const auto bias = gen_bias(spec, bias_mode);
    DenseMatrix column(m, 1);
    for (index_t i = 0; i < m; ++i) column(i, 0) = bias[i];
    info = write_matrix(Matrix(std::move(column)), out);
  } else {
    throw InvalidArgument("unknown kind '" + kind +
                          "' (expected weight|input|bias)");
  }
  std::cout << "wrote " << info.rows << "x" << info.cols
            << (info.kind == MatrixFileKind::coordinate
                    ? " coordinate, nnz=" + std::to_string(info.entries)
                    : " array")
            << " to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiring-generic sparse kernels and forward-pass benchmark"};
  app.require_subcommand(1);

  // sweep
  BenchConfig config;
  std::string sweep_bias = "zero";
  std::string sweep_out;
  auto* sweep = app.add_subcommand(
      "sweep", "time sparse vs dense layer steps over a sparsity sweep");
  sweep->add_option("--sizes", config.sizes, "matrix sizes m")
      ->required()
      ->delimiter(',');
  sweep
      ->add_option("--inverse-sparsities", config.inverse_sparsities,
                   "inverse sparsity values (1 = dense)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--batch", config.batch, "mini-batch size n")
      ->default_val(64);
  sweep->add_option("--layers", config.layers, "layer steps per sample")
      ->default_val(1);
  sweep->add_option("--workers", config.workers, "worker counts to sweep")
      ->delimiter(',')
      ->default_val(std::vector<int>{1});
  sweep->add_option("--repetitions", config.repetitions, "timed samples, >= 3")
      ->default_val(5);
  sweep->add_option("--warmup", config.warmup, "untimed warmup runs, >= 1")
      ->default_val(1);
  sweep->add_option("--seed", config.seed, "PRNG seed")->required();
  sweep->add_option("--bias-mode", sweep_bias, "zero|uniform01")
      ->default_val("zero");
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // analyze
  std::string analyze_in, analyze_out;
  index_t reference_m = 0;
  auto* analyzec = app.add_subcommand(
      "analyze", "compute curve parameters from a sweep CSV");
  analyzec->add_option("--in", analyze_in, "sweep CSV")->required();
  analyzec->add_option("--reference-m", reference_m,
                       "size the normalized columns are relative to "
                       "(default: largest size present)");
  analyzec->add_option("--out", analyze_out, "output CSV path")->required();

  // gen
  std::string gen_kind = "weight", gen_bias_mode = "zero", gen_out;
  index_t gen_m = 0, gen_batch = 64;
  double gen_is = 1.0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "write a generated matrix to a "
                                        "Matrix Market file");
  gen->add_option("--kind", gen_kind, "weight|input|bias")->default_val("weight");
  gen->add_option("--m", gen_m, "matrix size")->required();
  gen->add_option("--inverse-sparsity", gen_is, "weight inverse sparsity")
      ->default_val(1.0);
  gen->add_option("--batch", gen_batch, "input batch size")->default_val(64);
  gen->add_option("--seed", gen_seed, "PRNG seed")->required();
  gen->add_option("--bias-mode", gen_bias_mode, "zero|uniform01")
      ->default_val("zero");
  gen->add_option("--out", gen_out, "output path")->required();

  // verify
  index_t verify_m = 0, verify_layers = 1, verify_batch = 64;
  double verify_is = 1.0;
  std::uint64_t verify_seed = 0;
  std::string verify_bias = "zero";
  int verify_workers = 1;
  auto* verify = app.add_subcommand(
      "verify", "compare relu_forward against the dense reference");
  verify->add_option("--m", verify_m, "neurons per layer")->required();
  verify->add_option("--layers", verify_layers, "layer count")->default_val(1);
  verify->add_option("--inverse-sparsity", verify_is, "weight inverse sparsity")
      ->default_val(1.0);
  verify->add_option("--batch", verify_batch, "mini-batch size")->default_val(64);
  verify->add_option("--seed", verify_seed, "PRNG seed")->required();
  verify->add_option("--bias-mode", verify_bias, "zero|uniform01")
      ->default_val("zero");
  verify->add_option("--workers", verify_workers, "mxm workers")->default_val(1);

  // laws
  std::string laws_semiring;
  std::size_t laws_samples = 1000;
  std::uint64_t laws_seed = 0;
  auto* laws = app.add_subcommand("laws", "check the scalar semiring laws");
  laws->add_option("--semiring", laws_semiring,
                   "arithmetic|maxplus|minmax|gf2")
      ->required();
  laws->add_option("--samples", laws_samples, "random triples per law")
      ->default_val(1000);
  laws->add_option("--seed", laws_seed, "PRNG seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      config.bias_mode = bias_mode_from(sweep_bias);
      config.output = sweep_out;
      return run_sweep_cmd(config);
    }
    if (analyzec->parsed()) {
      const auto records = read_records_csv(std::filesystem::path(analyze_in));
      if (reference_m == 0) {
        for (const BenchRecord& r : records) {
          reference_m = std::max(reference_m, r.m);
        }
      }
      const auto params = analyze(records, reference_m);
      write_params_csv(params, std::filesystem::path(analyze_out));
      std::cout << "wrote " << params.size() << " rows to " << analyze_out
                << " (reference m=" << reference_m << ")\n";
      return 0;
    }
    if (gen->parsed()) {
      return run_gen(gen_kind, gen_m, gen_is, gen_batch, gen_seed,
                     bias_mode_from(gen_bias_mode), gen_out);
    }
    if (verify->parsed()) {
      return run_verify(verify_m, verify_layers, verify_is, verify_batch,
                        verify_seed, bias_mode_from(verify_bias),
                        verify_workers);
    }
    if (laws->parsed()) {
      return run_laws(laws_semiring, laws_samples, laws_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
