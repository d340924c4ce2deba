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

// Acceptance suite: one numbered check per release criterion, each printing
// a PASS/FAIL line. Exits nonzero if anything fails. The timing checks run
// a real sweep at m in {512, 2048}, so a release build is assumed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "semikern/bench.hpp"
#include "semikern/dnn.hpp"
#include "semikern/matio.hpp"
#include "semikern/rng.hpp"
#include "test_helpers.hpp"

using namespace semikern;
using namespace semikern::testing;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  std::function<void(Checker&)> run;
};

// ---------------------------------------------------------------------------
// 1. correctness oracle: 50 random configurations, semiring pipeline vs the
//    dense reference, max relative error <= 1e-5
void criterion_correctness(Checker& c) {
  SplitMix64 rng(2024);
  const double sparsities[] = {1.0, 4.0, 64.0};
  for (int trial = 0; trial < 50; ++trial) {
    const index_t m = 4 + rng.next() % 61;
    const index_t layers = 1 + rng.next() % 4;
    const index_t n = 1 + rng.next() % 8;
    const double is = sparsities[rng.next() % 3];
    const BiasMode mode =
        (trial % 2 == 0) ? BiasMode::zero : BiasMode::uniform01;

    std::vector<Matrix> weights;
    std::vector<std::vector<Scalar>> biases;
    const std::uint64_t seed = rng.next();
    for (index_t k = 0; k < layers; ++k) {
      const GenSpec spec{m, is, 1, SplitMix64::at(seed, k)};
      weights.emplace_back(gen_weight(spec));
      biases.push_back(gen_bias(spec, mode));
    }
    const DnnModel model(std::move(weights), std::move(biases));
    const Batch input = gen_input(GenSpec{m, 1.0, n, rng.next()});

    const float err =
        max_rel_error(relu_forward(model, input), dense_relu_forward(model, input));
    std::ostringstream what;
    what << "m=" << m << " L=" << layers << " n=" << n << " is=" << is
         << ": max relative error " << err;
    c.expect(err <= 1e-5f, what.str());
    if (!c.ok) return;
  }
}

// 2. scalar semiring laws: exact for max-plus/min-max/GF(2), 1e-5 for
//    arithmetic, 1000 seeded samples each
void criterion_laws(Checker& c) {
  for (const Semiring& s : {max_plus_semiring(), min_max_semiring(),
                            gf2_semiring(), arithmetic_semiring()}) {
    const LawReport report = check_laws(s, 1000, 42);
    for (const LawResult& law : report.laws) {
      std::ostringstream what;
      what << report.semiring << ": " << law.law << " failed "
           << law.failures << " of 1000 (first witness a=" << law.witness[0]
           << " b=" << law.witness[1] << " c=" << law.witness[2] << ")";
      c.expect(law.passed, what.str());
    }
  }
}

// 3. matrix-level algebra: 20 random 8x8 instances over max-plus and GF(2),
//    all laws bitwise exact
void criterion_matrix_algebra(Checker& c) {
  SplitMix64 rng(7);
  for (const Semiring& s : {max_plus_semiring(), gf2_semiring()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a(random_csr(8, 8, 0.4, s, rng));
      const Matrix b(random_csr(8, 8, 0.4, s, rng));
      const Matrix cc(random_csr(8, 8, 0.4, s, rng));
      const std::string tag =
          std::string(s.name) + " trial " + std::to_string(trial);

      c.expect(matrices_match(mxm(mxm(a, b, s), cc, s),
                              mxm(a, mxm(b, cc, s), s), s, true),
               tag + ": mxm associativity");
      c.expect(matrices_match(
                   mxm(a, ewise_add(b, cc, s), s),
                   ewise_add(mxm(a, b, s), mxm(a, cc, s), s), s, true),
               tag + ": mxm distributivity over ewise_add");
      c.expect(matrices_match(ewise_add(a, b, s), ewise_add(b, a, s), s, true),
               tag + ": ewise_add commutativity");
      c.expect(matrices_match(ewise_add(ewise_add(a, b, s), cc, s),
                              ewise_add(a, ewise_add(b, cc, s), s), s, true),
               tag + ": ewise_add associativity");
      c.expect(matrices_match(ewise_mul(ewise_mul(a, b, s), cc, s),
                              ewise_mul(a, ewise_mul(b, cc, s), s), s, true),
               tag + ": ewise_mul associativity");
      c.expect(matrices_match(
                   ewise_mul(a, ewise_add(b, cc, s), s),
                   ewise_add(ewise_mul(a, b, s), ewise_mul(a, cc, s), s), s,
                   true),
               tag + ": ewise distributivity");
      if (!c.ok) return;
    }
  }
}

// 4. zero-elision: explicit stored semiring zeros never change results,
//    20 random instances
void criterion_zero_elision(Checker& c) {
  SplitMix64 rng(11);
  const Semiring all[] = {arithmetic_semiring(), max_plus_semiring(),
                          min_max_semiring(), gf2_semiring()};
  for (int trial = 0; trial < 20; ++trial) {
    const Semiring& s = all[trial % 4];
    const bool exact = s.kind != SemiringKind::arithmetic;
    const index_t m = 2 + rng.next() % 8;
    const index_t l = 2 + rng.next() % 8;
    const index_t n = 2 + rng.next() % 8;
    const CsrMatrix a = random_csr(m, l, 0.35, s, rng);
    const CsrMatrix b = random_csr(l, n, 0.35, s, rng);
    const CsrMatrix e = random_csr(m, l, 0.35, s, rng);
    const CsrMatrix az = inject_stored_zeros(a, s.zero, 0.4, rng);
    const CsrMatrix bz = inject_stored_zeros(b, s.zero, 0.4, rng);
    const CsrMatrix ez = inject_stored_zeros(e, s.zero, 0.4, rng);
    const std::string tag =
        std::string(s.name) + " trial " + std::to_string(trial);

    c.expect(matrices_match(Matrix(mxm(a, b, s)), Matrix(mxm(az, bz, s)), s,
                            exact),
             tag + ": csr*csr mxm changed");
    c.expect(matrices_match(Matrix(mxm(a, to_dense(b, s.zero), s)),
                            Matrix(mxm(az, to_dense(b, s.zero), s)), s, exact),
             tag + ": csr*dense mxm changed");
    c.expect(matrices_match(ewise_add(Matrix(a), Matrix(e), s),
                            ewise_add(Matrix(az), Matrix(ez), s), s, exact),
             tag + ": ewise_add changed");
    c.expect(matrices_match(ewise_mul(Matrix(a), Matrix(e), s),
                            ewise_mul(Matrix(az), Matrix(ez), s), s, exact),
             tag + ": ewise_mul changed");
    if (!c.ok) return;
  }
}

// ---------------------------------------------------------------------------
// Criteria 5-8 share one desk-scale sweep.

constexpr double kSweepSparsities[] = {1, 4, 16, 64, 256, 1024, 4096, 16384};

const SweepResult& shared_sweep() {
  static const SweepResult result = [] {
    BenchConfig config;
    config.sizes = {512, 2048};
    config.inverse_sparsities.assign(std::begin(kSweepSparsities),
                                     std::end(kSweepSparsities));
    config.batch = 64;
    config.repetitions = 7;
    config.warmup = 2;
    config.seed = 42;
    return run_sweep(config);
  }();
  return result;
}

double sweep_time(index_t m, Impl impl, double is) {
  for (const BenchRecord& r : shared_sweep().records) {
    if (r.m == m && r.implementation == impl && r.inverse_sparsity == is) {
      return r.mean_layer_seconds;
    }
  }
  throw Error("sweep record missing");
}

// 5. dense layer time is independent of sparsity: coefficient of variation
//    across the sweep < 20% at m=2048
void criterion_dense_invariance(Checker& c) {
  std::vector<double> times;
  for (const double is : kSweepSparsities) {
    times.push_back(sweep_time(2048, Impl::dense, is));
  }
  double mean = 0.0;
  for (const double t : times) mean += t;
  mean /= static_cast<double>(times.size());
  double ss = 0.0;
  for (const double t : times) ss += (t - mean) * (t - mean);
  const double cov =
      std::sqrt(ss / static_cast<double>(times.size() - 1)) / mean;
  std::ostringstream what;
  what << "dense m=2048 coefficient of variation " << cov;
  c.expect(cov < 0.20, what.str());
}

// 6. sparse time decays with inverse sparsity (15% slack) and beats dense
//    for every swept inverse sparsity >= 64, at m=2048
void criterion_sparse_decay_crossover(Checker& c) {
  double prev = sweep_time(2048, Impl::sparse, 1.0);
  for (std::size_t i = 1; i < std::size(kSweepSparsities); ++i) {
    const double t = sweep_time(2048, Impl::sparse, kSweepSparsities[i]);
    std::ostringstream what;
    what << "sparse m=2048: time rose from " << prev << " to " << t
         << " at inverse sparsity " << kSweepSparsities[i];
    c.expect(t <= prev * 1.15, what.str());
    prev = t;
  }
  for (const double is : kSweepSparsities) {
    if (is < 64) continue;
    const double sparse = sweep_time(2048, Impl::sparse, is);
    const double dense = sweep_time(2048, Impl::dense, is);
    std::ostringstream what;
    what << "m=2048 is=" << is << ": sparse " << sparse << "s not below dense "
         << dense << "s";
    c.expect(sparse < dense, what.str());
  }
}

// 7. saturation: the two sparsest points are within 2x of each other
void criterion_saturation(Checker& c) {
  const double t4096 = sweep_time(2048, Impl::sparse, 4096);
  const double t16384 = sweep_time(2048, Impl::sparse, 16384);
  const double ratio = t16384 / t4096;
  std::ostringstream what;
  what << "m=2048 sparse: t(16384)/t(4096) = " << ratio;
  c.expect(ratio >= 0.5 && ratio <= 2.0, what.str());
}

// 8. curve parameters: normalized slope and saturation agree across sizes
//    within 2x; the saturation cost scales with m, not m^2
void criterion_curve_params(Checker& c) {
  const auto params = analyze(shared_sweep().records, 2048);
  const CurveParams* p512 = nullptr;
  const CurveParams* p2048 = nullptr;
  for (const CurveParams& p : params) {
    if (p.m == 512) p512 = &p;
    if (p.m == 2048) p2048 = &p;
  }
  c.expect(p512 != nullptr && p2048 != nullptr, "missing analyze rows");
  if (!c.ok) return;

  std::ostringstream what;
  what << "normalized slope at m=512: " << p512->slope_normalized;
  c.expect(p512->slope_normalized >= 0.5 && p512->slope_normalized <= 2.0,
           what.str());

  what.str({});
  what << "normalized saturation at m=512: " << p512->saturation_normalized;
  c.expect(
      p512->saturation_normalized >= 0.5 && p512->saturation_normalized <= 2.0,
      what.str());

  // T_sat growing like m means the ratio of raw saturation times divided by
  // the size ratio stays near 1; m^2 scaling would push it to 4.
  const double t_sat_512 = p512->saturation * 512;
  const double t_sat_2048 = p2048->saturation * 2048;
  const double m_scaled = (t_sat_2048 / t_sat_512) / (2048.0 / 512.0);
  what.str({});
  what << "saturation time ratio over size ratio: " << m_scaled;
  c.expect(m_scaled >= 0.5 && m_scaled <= 2.0, what.str());
}

// 9. memory: the m=2048, is=256 weight takes < 3% of the dense bytes and
//    the byte formula matches the stored arrays exactly
void criterion_memory(Checker& c) {
  const GenSpec spec{2048, 256.0, 64, 42};
  const CsrMatrix w = gen_weight(spec);
  const std::size_t dense_bytes = dense_storage_bytes(2048, 2048);
  c.expect(dense_bytes == std::size_t{16} * 1024 * 1024,
           "dense 2048x2048 bytes");
  const std::size_t sparse_bytes = storage_bytes(Matrix(w));
  std::ostringstream what;
  what << "sparse bytes " << sparse_bytes << " vs dense " << dense_bytes;
  c.expect(static_cast<double>(sparse_bytes) < 0.03 * dense_bytes, what.str());
  c.expect(sparse_bytes == csr_storage_bytes(2048, w.nnz()),
           "formula disagrees with the stored arrays");
  c.expect(sparse_bytes == (2048 + 1) * kIndexWidth +
                               w.nnz() * (kIndexWidth + sizeof(Scalar)),
           "expanded formula disagrees");
}

// 10. determinism: sweep reruns reproduce nnz/bytes; forward outputs are
//     bitwise identical for 1, 2 and 4 workers
void criterion_determinism(Checker& c) {
  BenchConfig config;
  config.sizes = {128};
  config.inverse_sparsities = {1, 16};
  config.batch = 16;
  config.repetitions = 3;
  config.warmup = 1;
  config.seed = 7;
  const SweepResult a = run_sweep(config);
  const SweepResult b = run_sweep(config);
  c.expect(a.records.size() == b.records.size(), "record counts differ");
  for (std::size_t i = 0; i < a.records.size() && c.ok; ++i) {
    c.expect(a.records[i].nnz == b.records[i].nnz &&
                 a.records[i].matrix_bytes == b.records[i].matrix_bytes,
             "nnz/bytes columns differ between reruns");
  }

  std::vector<Matrix> weights;
  std::vector<std::vector<Scalar>> biases;
  for (index_t k = 0; k < 3; ++k) {
    const GenSpec spec{64, 16.0, 1, SplitMix64::at(99, k)};
    weights.emplace_back(gen_weight(spec));
    biases.push_back(gen_bias(spec, BiasMode::uniform01));
  }
  const DnnModel model(std::move(weights), std::move(biases));
  const Batch input = gen_input(GenSpec{64, 1.0, 8, 5});
  const Batch w1 = relu_forward(model, input, {1, false});
  c.expect(bitwise_equal(w1, relu_forward(model, input, {2, false})),
           "workers=2 output differs");
  c.expect(bitwise_equal(w1, relu_forward(model, input, {4, false})),
           "workers=4 output differs");
}

// 11. I/O: 100 random matrices round-trip bit-exactly; 20 mutated files are
//     rejected with line-numbered parse errors
void criterion_io(Checker& c) {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    const index_t rows = 1 + rng.next() % 32;
    const index_t cols = 1 + rng.next() % 32;
    std::ostringstream out;
    if (trial % 2 == 0) {
      const CsrMatrix m = random_csr(rows, cols, 0.05 + 0.6 * rng.next_unit(),
                                     arithmetic_semiring(), rng);
      write_matrix(Matrix(m), out);
      std::istringstream in(out.str());
      c.expect(bitwise_equal(m, read_matrix(in).csr()),
               "coordinate round-trip " + std::to_string(trial));
    } else {
      const DenseMatrix m =
          random_dense(rows, cols, arithmetic_semiring(), rng);
      write_matrix(Matrix(m), out);
      std::istringstream in(out.str());
      c.expect(bitwise_equal(m, read_matrix(in).dense()),
               "array round-trip " + std::to_string(trial));
    }
  }
  if (!c.ok) return;

  // one valid file, 20 distinct mutations
  const CsrMatrix m = csr_from_triples(7, 7, sample_graph_edges());
  std::ostringstream base_out;
  write_matrix(Matrix(m), base_out);
  const std::string base = base_out.str();

  const auto mutate = [&](int which) -> std::string {
    std::string t = base;
    switch (which) {
      case 0: return t.substr(0, 10);                        // header cut
      case 1: return t.substr(t.find('\n') + 1);             // header gone
      case 2: t[2] = 'm'; return t;                          // banner typo
      case 3: return "%%MatrixMarket matrix coordinate complex general\n" +
                     t.substr(t.find('\n') + 1);
      case 4: return "%%MatrixMarket matrix coordinate real symmetric\n" +
                     t.substr(t.find('\n') + 1);
      case 5: return t.substr(0, t.find('\n') + 1);          // size line gone
      case 6: {                                              // nnz overstated
        const auto p = t.find("7 7 12");
        t.replace(p, 6, "7 7 13");
        return t;
      }
      case 7: {                                              // nnz understated
        const auto p = t.find("7 7 12");
        t.replace(p, 6, "7 7 11");
        return t;
      }
      case 8: {                                              // row too large
        const auto p = t.find("\n1 ");
        t.replace(p, 3, "\n9 ");
        return t;
      }
      case 9: {                                              // col too large
        const auto p = t.find("\n1 2 ");
        t.replace(p, 5, "\n1 8 ");
        return t;
      }
      case 10: {                                             // zero index
        const auto p = t.find("\n1 ");
        t.replace(p, 3, "\n0 ");
        return t;
      }
      case 11: return t + "99 99 1.0\n";                     // extra entry
      case 12: return t + "trailing garbage\n";
      case 13: {                                             // extra token
        const auto p = t.find('\n', t.find("12"));
        const auto q = t.find('\n', p + 1);
        t.insert(q, " 42");
        return t;
      }
      case 14: {                                             // bad value
        const auto p = t.find("1\n", t.find("12"));
        t.replace(p, 1, "x");
        return t;
      }
      case 15: {                                             // duplicate line
        const auto p = t.find('\n', t.find("12")) + 1;
        const auto q = t.find('\n', p) + 1;
        return t.insert(q, t.substr(p, q - p));
      }
      case 16: {                                             // size line short
        const auto p = t.find("7 7 12");
        t.replace(p, 6, "7 7");
        return t;
      }
      case 17: {                                             // negative col
        const auto p = t.find("\n1 2 ");
        t.replace(p, 5, "\n1 -2 ");
        return t;
      }
      case 18: {                                             // float index
        const auto p = t.find("\n1 2 ");
        t.replace(p, 5, "\n1 2.5 ");
        return t;
      }
      default: {                                             // value removed
        const auto p = t.find('\n', t.find("12")) + 1;
        const auto q = t.find('\n', p);
        const auto line = t.substr(p, q - p);
        return t.replace(p, q - p, line.substr(0, line.rfind(' ')));
      }
    }
  };

  for (int which = 0; which < 20 && c.ok; ++which) {
    const std::string broken = mutate(which);
    bool threw = false;
    std::size_t line = 0;
    try {
      std::istringstream in(broken);
      (void)read_matrix(in);
    } catch (const ParseError& e) {
      threw = true;
      line = e.line();
    } catch (const Error&) {
      threw = true;  // non-positional errors still count as rejection
      line = 1;
    }
    c.expect(threw && line >= 1,
             "mutation " + std::to_string(which) + " was accepted");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "correctness oracle (semiring vs dense reference)", criterion_correctness},
      {2, "scalar semiring laws", criterion_laws},
      {3, "matrix-level algebra (exact)", criterion_matrix_algebra},
      {4, "zero-elision soundness", criterion_zero_elision},
      {5, "dense time invariant to sparsity", criterion_dense_invariance},
      {6, "sparse decay and crossover", criterion_sparse_decay_crossover},
      {7, "sparse saturation", criterion_saturation},
      {8, "curve-parameter invariance", criterion_curve_params},
      {9, "memory proportional to nonzeros", criterion_memory},
      {10, "determinism and parallel soundness", criterion_determinism},
      {11, "matrix file round-trip and rejection", criterion_io},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Checker checker;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.ok = false;
      checker.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%2d/11] %-48s %s (%.2fs)\n", criterion.id, criterion.title,
                checker.ok ? "PASS" : "FAIL", secs);
    if (!checker.ok) {
      std::printf("        %s\n", checker.detail.c_str());
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d of 11 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
