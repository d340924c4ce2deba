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

#include "semikern/semiring.hpp"

#include <algorithm>
#include <cmath>

#include "semikern/rng.hpp"

namespace semikern {

Semiring arithmetic_semiring() noexcept {
  return {SemiringKind::arithmetic, "arithmetic", ops::Arithmetic::zero,
          ops::Arithmetic::one};
}

Semiring max_plus_semiring() noexcept {
  return {SemiringKind::max_plus, "maxplus", ops::MaxPlus::zero,
          ops::MaxPlus::one};
}

Semiring min_max_semiring() noexcept {
  return {SemiringKind::min_max, "minmax", ops::MinMax::zero,
          ops::MinMax::one};
}

Semiring gf2_semiring() noexcept {
  return {SemiringKind::gf2, "gf2", ops::Gf2::zero, ops::Gf2::one};
}

Semiring semiring_by_name(std::string_view name) {
  if (name == "arithmetic") return arithmetic_semiring();
  if (name == "maxplus") return max_plus_semiring();
  if (name == "minmax") return min_max_semiring();
  if (name == "gf2") return gf2_semiring();
  throw InvalidArgument("unknown semiring '" + std::string(name) +
                        "' (expected arithmetic|maxplus|minmax|gf2)");
}

namespace {

constexpr Scalar kNegInf = -std::numeric_limits<Scalar>::infinity();
constexpr Scalar kPosInf = std::numeric_limits<Scalar>::infinity();

// Domain sampler. Max-plus reals come off a 1/64 lattice in (-8, 8) so that
// binary32 sums of three samples are exact; one draw in eight is the zero
// element (-inf for max-plus, +inf for min-max).
Scalar sample_scalar(SemiringKind kind, SplitMix64& rng) {
  switch (kind) {
    case SemiringKind::arithmetic:
      return static_cast<Scalar>(-10.0 + 20.0 * rng.next_unit());
    case SemiringKind::max_plus: {
      const std::uint64_t bits = rng.next();
      if ((bits & 7u) == 0) return kNegInf;
      const auto step = static_cast<long>((bits >> 3) % 1024) - 512;
      return static_cast<Scalar>(step) / 64.0f;
    }
    case SemiringKind::min_max: {
      const std::uint64_t bits = rng.next();
      if ((bits & 7u) == 0) return kPosInf;
      return static_cast<Scalar>(10.0 * SplitMix64::to_unit(bits));
    }
    case SemiringKind::gf2:
      return (rng.next() & 1u) ? 1.0f : 0.0f;
  }
  throw Error("unknown semiring kind");
}

float triple_scale(Scalar a, Scalar b, Scalar c) {
  return std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
}

}  // namespace

LawReport check_laws(const Semiring& s, std::size_t samples,
                     std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("check_laws: samples must be >= 1");

  LawReport report;
  report.semiring = s.name;
  report.samples = samples;
  report.exact = s.kind != SemiringKind::arithmetic;

  struct Law {
    std::string_view name;
    Scalar (*lhs)(const Semiring&, Scalar, Scalar, Scalar);
    Scalar (*rhs)(const Semiring&, Scalar, Scalar, Scalar);
  };
  // The five semiring laws, then the identity/annihilator contracts.
  const Law laws[] = {
      {"additive commutativity",
       [](const Semiring& r, Scalar a, Scalar b, Scalar) { return r.add(a, b); },
       [](const Semiring& r, Scalar a, Scalar b, Scalar) { return r.add(b, a); }},
      {"additive associativity",
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.add(r.add(a, b), c);
       },
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.add(a, r.add(b, c));
       }},
      {"multiplicative associativity",
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.mul(r.mul(a, b), c);
       },
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.mul(a, r.mul(b, c));
       }},
      {"left distributivity",
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.mul(a, r.add(b, c));
       },
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.add(r.mul(a, b), r.mul(a, c));
       }},
      {"right distributivity",
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.mul(r.add(a, b), c);
       },
       [](const Semiring& r, Scalar a, Scalar b, Scalar c) {
         return r.add(r.mul(a, c), r.mul(b, c));
       }},
      {"additive identity",
       [](const Semiring& r, Scalar a, Scalar, Scalar) {
         return r.add(a, r.zero);
       },
       [](const Semiring&, Scalar a, Scalar, Scalar) { return a; }},
      {"multiplicative identity",
       [](const Semiring& r, Scalar a, Scalar, Scalar) {
         return r.mul(a, r.one);
       },
       [](const Semiring&, Scalar a, Scalar, Scalar) { return a; }},
      {"multiplicative annihilator",
       [](const Semiring& r, Scalar a, Scalar, Scalar) {
         return r.mul(a, r.zero);
       },
       [](const Semiring& r, Scalar, Scalar, Scalar) { return r.zero; }},
  };

  for (const Law& law : laws) {
    LawResult result;
    result.law = law.name;
    SplitMix64 rng(seed);  // same triples for every law
    for (std::size_t i = 0; i < samples; ++i) {
      const Scalar a = sample_scalar(s.kind, rng);
      const Scalar b = sample_scalar(s.kind, rng);
      const Scalar c = sample_scalar(s.kind, rng);
      const Scalar lhs = law.lhs(s, a, b, c);
      const Scalar rhs = law.rhs(s, a, b, c);
      const bool ok = report.exact
                          ? lhs == rhs
                          : approx_equal_scaled(lhs, rhs, triple_scale(a, b, c));
      if (!ok) {
        if (result.passed) {
          result.passed = false;
          result.witness = {a, b, c};
          result.lhs = lhs;
          result.rhs = rhs;
        }
        ++result.failures;
      }
    }
    report.laws.push_back(result);
  }
  return report;
}

}  // namespace semikern
