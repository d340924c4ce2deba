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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "semikern/error.hpp"

namespace semikern {

/// Single scalar carrier for every semiring in the library: binary32.
/// GF(2) uses the values 0.0f and 1.0f; max-plus uses -inf as its zero.
using Scalar = float;

enum class SemiringKind : std::uint8_t { arithmetic, max_plus, min_max, gf2 };

/// Library-wide binary32 comparison constants: relative 1e-5 with an
/// absolute floor of 1e-6.
inline constexpr float kRelTol = 1e-5f;
inline constexpr float kAbsTol = 1e-6f;

/// |x - y| <= max(kAbsTol, kRelTol * max(|x|, |y|)). Equal values (including
/// matching infinities) always pass.
inline bool approx_equal(Scalar x, Scalar y) noexcept {
  if (x == y) return true;
  const float diff = std::fabs(x - y);
  const float scale = std::max(std::fabs(x), std::fabs(y));
  return diff <= std::max(kAbsTol, kRelTol * scale);
}

/// Comparison against a caller-supplied magnitude, for checking two
/// algebraic routes whose operands are much larger than the result.
inline bool approx_equal_scaled(Scalar x, Scalar y, float scale) noexcept {
  if (x == y) return true;
  return std::fabs(x - y) <= std::max(kAbsTol, kRelTol * scale);
}

namespace ops {

// Static op tables. Matrix kernels are templated on one of these so the
// scalar operations inline into the inner loops; the runtime Semiring
// object below carries the matching tag for dispatch.

struct Arithmetic {
  static constexpr SemiringKind kind = SemiringKind::arithmetic;
  static constexpr Scalar zero = 0.0f;
  static constexpr Scalar one = 1.0f;
  static Scalar add(Scalar a, Scalar b) noexcept { return a + b; }
  static Scalar mul(Scalar a, Scalar b) noexcept { return a * b; }
};

struct MaxPlus {
  static constexpr SemiringKind kind = SemiringKind::max_plus;
  static constexpr Scalar zero = -std::numeric_limits<Scalar>::infinity();
  static constexpr Scalar one = 0.0f;
  static Scalar add(Scalar a, Scalar b) noexcept { return a < b ? b : a; }
  // IEEE gives -inf + -inf = -inf, so the annihilator is exact.
  static Scalar mul(Scalar a, Scalar b) noexcept { return a + b; }
};

struct MinMax {
  static constexpr SemiringKind kind = SemiringKind::min_max;
  static constexpr Scalar zero = std::numeric_limits<Scalar>::infinity();
  static constexpr Scalar one = 0.0f;
  static Scalar add(Scalar a, Scalar b) noexcept { return b < a ? b : a; }
  static Scalar mul(Scalar a, Scalar b) noexcept { return a < b ? b : a; }
};

struct Gf2 {
  static constexpr SemiringKind kind = SemiringKind::gf2;
  static constexpr Scalar zero = 0.0f;
  static constexpr Scalar one = 1.0f;
  static Scalar add(Scalar a, Scalar b) {
    require(a);
    require(b);
    return a == b ? 0.0f : 1.0f;  // xor
  }
  static Scalar mul(Scalar a, Scalar b) {
    require(a);
    require(b);
    return (a == 1.0f && b == 1.0f) ? 1.0f : 0.0f;  // and
  }
  // Out-of-domain scalars raise instead of coercing; silent coercion would
  // mask bugs in the law tests.
  static void require(Scalar v) {
    if (v != 0.0f && v != 1.0f) {
      throw DomainError("GF(2) scalar must be 0 or 1, got " +
                        std::to_string(v));
    }
  }
};

}  // namespace ops

/// A scalar algebra (domain, add, mul, zero, one). Values are immutable
/// after construction and safe to share across threads; add/mul are pure.
struct Semiring {
  SemiringKind kind;
  std::string_view name;
  Scalar zero;  // additive identity and multiplicative annihilator
  Scalar one;   // multiplicative identity

  Scalar add(Scalar a, Scalar b) const;
  Scalar mul(Scalar a, Scalar b) const;
};

/// (R, +, x, 0, 1)
Semiring arithmetic_semiring() noexcept;
/// ({-inf} u R, max, +, -inf, 0)
Semiring max_plus_semiring() noexcept;
/// (R>=0 u {inf}, min, max, inf, 0); inputs restricted to that domain
Semiring min_max_semiring() noexcept;
/// ({0, 1}, xor, and, 0, 1); out-of-domain inputs raise DomainError
Semiring gf2_semiring() noexcept;

/// Lookup by CLI-facing name: arithmetic | maxplus | minmax | gf2.
/// Throws InvalidArgument for anything else.
Semiring semiring_by_name(std::string_view name);

/// Invokes f with the static op table matching `kind`.
template <typename F>
decltype(auto) dispatch(SemiringKind kind, F&& f) {
  switch (kind) {
    case SemiringKind::arithmetic:
      return f(ops::Arithmetic{});
    case SemiringKind::max_plus:
      return f(ops::MaxPlus{});
    case SemiringKind::min_max:
      return f(ops::MinMax{});
    case SemiringKind::gf2:
      return f(ops::Gf2{});
  }
  throw Error("unknown semiring kind");
}

inline Scalar Semiring::add(Scalar a, Scalar b) const {
  return dispatch(kind, [&](auto ops) { return decltype(ops)::add(a, b); });
}

inline Scalar Semiring::mul(Scalar a, Scalar b) const {
  return dispatch(kind, [&](auto ops) { return decltype(ops)::mul(a, b); });
}

// --- scalar law checking -------------------------------------------------

struct LawResult {
  std::string_view law;
  bool passed = true;
  std::size_t failures = 0;
  std::array<Scalar, 3> witness{};  // first failing triple (a, b, c)
  Scalar lhs = 0;
  Scalar rhs = 0;
};

struct LawReport {
  std::string_view semiring;
  std::size_t samples = 0;
  bool exact = true;  // checked bit-for-bit rather than to tolerance
  std::vector<LawResult> laws;

  bool all_passed() const {
    for (const auto& l : laws) {
      if (!l.passed) return false;
    }
    return true;
  }
};

/// Draws `samples` random triples from the semiring's domain and verifies
/// the five scalar laws (additive commutativity and associativity,
/// multiplicative associativity, left and right distributivity) plus the
/// additive identity, multiplicative identity and multiplicative
/// annihilator. Failures are reported, never thrown.
///
/// The exact semirings (max-plus, min-max, GF(2)) are checked bitwise. For
/// max-plus the real samples are drawn from a 1/64 dyadic lattice in
/// (-8, 8) so that chains of up to three binary32 additions are exact;
/// arbitrary reals would make floating-point associativity fail at the ulp
/// level even though the algebra itself is exact. The arithmetic semiring
/// is checked to kRelTol relative to the largest magnitude in the triple,
/// with the kAbsTol floor.
LawReport check_laws(const Semiring& s, std::size_t samples,
                     std::uint64_t seed);

}  // namespace semikern
