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

#include <doctest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "semikern/matgen.hpp"
#include "test_helpers.hpp"

using namespace semikern;

TEST_SUITE_BEGIN("matgen");

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(gen_weight({0, 1.0, 64, 1}), InvalidArgument);
  CHECK_THROWS_AS(gen_weight({4, 0.5, 64, 1}), InvalidArgument);
  CHECK_THROWS_AS(gen_input({4, 1.0, 0, 1}), InvalidArgument);
}

TEST_CASE("inverse sparsity 1 fills the matrix") {
  const CsrMatrix w = gen_weight({64, 1.0, 64, 7});
  CHECK(w.nnz() == 64 * 64);
}

TEST_CASE("extreme sparsity leaves around one entry in the whole matrix") {
  // expected nnz = 512^2 / 262144 = 1; Poisson-ish tail makes 8 a safe cap
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CsrMatrix w = gen_weight({512, 262144.0, 64, seed});
    CHECK(w.nnz() <= 8);
    total += static_cast<double>(w.nnz());
  }
  const double mean = total / 20.0;
  CHECK(mean > 0.05);
  CHECK(mean < 3.0);
}

TEST_CASE("generators are pure functions of the spec") {
  const GenSpec spec{48, 8.0, 16, 12345};
  CHECK(testing::bitwise_equal(gen_weight(spec), gen_weight(spec)));
  CHECK(testing::bitwise_equal(gen_input(spec), gen_input(spec)));
  CHECK(gen_bias(spec, BiasMode::uniform01) ==
        gen_bias(spec, BiasMode::uniform01));

  // different seed, different matrix
  GenSpec other = spec;
  other.seed = 54321;
  CHECK_FALSE(testing::bitwise_equal(gen_weight(spec), gen_weight(other)));
}

TEST_CASE("weight values stay in the generating interval") {
  const CsrMatrix w = gen_weight({128, 4.0, 64, 3});
  for (const Scalar v : w.values()) {
    CHECK(v >= -1.0f);
    CHECK(v < 3.0f);
  }
}

TEST_CASE("sparser matrices mask denser ones") {
  // same (m, seed): the entries present at a higher inverse sparsity are a
  // subset of those present at a lower one, with identical values
  const GenSpec base{96, 1.0, 64, 2026};
  GenSpec spec4 = base, spec16 = base;
  spec4.inverse_sparsity = 4.0;
  spec16.inverse_sparsity = 16.0;
  const CsrMatrix dense_w = gen_weight(base);
  const CsrMatrix w4 = gen_weight(spec4);
  const CsrMatrix w16 = gen_weight(spec16);
  CHECK(w16.nnz() < w4.nnz());
  CHECK(w4.nnz() < dense_w.nnz());

  const auto entries = [](const CsrMatrix& m) {
    std::set<std::pair<std::pair<index_t, index_t>, Scalar>> out;
    for (index_t i = 0; i < m.rows(); ++i) {
      const auto cols = m.row_cols(i);
      const auto vals = m.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        out.insert({{i, cols[k]}, vals[k]});
      }
    }
    return out;
  };
  const auto all = entries(dense_w);
  const auto e4 = entries(w4);
  const auto e16 = entries(w16);
  for (const auto& e : e16) CHECK(e4.count(e) == 1);
  for (const auto& e : e4) CHECK(all.count(e) == 1);
}

TEST_CASE("nnz concentrates around the expected count") {
  // binomial: mean m^2/64, sigma = sqrt(m^2 p (1-p))
  const index_t m = 1024;
  const double p = 1.0 / 64.0;
  const double expected = m * static_cast<double>(m) * p;
  const double sigma = std::sqrt(m * static_cast<double>(m) * p * (1 - p));
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    total += static_cast<double>(gen_weight({m, 64.0, 64, seed}).nnz());
  }
  const double mean = total / 100.0;
  CHECK(mean > expected - 3 * sigma);
  CHECK(mean < expected + 3 * sigma);
}

TEST_CASE("value distributions have the right means and ranges") {
  // U[-1,3) has mean 1; U[0,1) has mean 0.5
  const CsrMatrix w = gen_weight({512, 2.0, 64, 11});  // ~1.3e5 draws
  CHECK(w.nnz() > 100000);
  double wsum = 0.0;
  for (const Scalar v : w.values()) wsum += v;
  const double wmean = wsum / static_cast<double>(w.nnz());
  CHECK(wmean > 0.95);
  CHECK(wmean < 1.05);

  const DenseMatrix y = gen_input({512, 1.0, 256, 13});
  double ysum = 0.0;
  for (const Scalar v : y.data()) {
    CHECK(v >= 0.0f);
    CHECK(v < 1.0f);
    ysum += v;
  }
  const double ymean = ysum / static_cast<double>(y.data().size());
  CHECK(ymean > 0.48);
  CHECK(ymean < 0.52);
}

TEST_CASE("input batch defaults to 64 columns") {
  GenSpec spec;
  spec.m = 32;
  spec.seed = 5;
  const DenseMatrix y = gen_input(spec);
  CHECK(y.rows() == 32);
  CHECK(y.cols() == 64);
}

TEST_CASE("bias modes") {
  const GenSpec spec{40, 1.0, 64, 17};
  const auto zero = gen_bias(spec);
  CHECK(zero.size() == 40);
  for (const Scalar v : zero) CHECK(v == 0.0f);

  const auto uniform = gen_bias(spec, BiasMode::uniform01);
  bool any_nonzero = false;
  for (const Scalar v : uniform) {
    CHECK(v >= 0.0f);
    CHECK(v < 1.0f);
    any_nonzero |= v != 0.0f;
  }
  CHECK(any_nonzero);
}

TEST_SUITE_END();
