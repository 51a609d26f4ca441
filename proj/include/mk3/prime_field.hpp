#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mk3/errors.hpp"

namespace mk3 {

// Context for F_p arithmetic, p an odd prime. Elements are canonical
// residues in [0, p). Carries the p-1 = 2^s * q factorization and a fixed
// quadratic non-residue so square roots need no per-call search.
struct PrimeFieldCtx {
  std::uint64_t p;
  std::uint64_t q;       // odd part of p-1
  unsigned s;            // p-1 = q * 2^s
  std::uint64_t nonresidue;  // smallest quadratic non-residue

  // Verifies primality and precomputes the derived fields. Throws
  // CharacteristicTwoError for p = 2 and NotPrimeError for composite or
  // too-small input.
  explicit PrimeFieldCtx(std::uint64_t prime);

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = a + b;
    return r >= p ? r - p : r;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // Throws DivisionByZeroError on a = 0.
  std::uint64_t inv(std::uint64_t a) const;
  // Normalizes a signed integer into [0, p).
  std::uint64_t from_int(long long v) const {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<std::uint64_t>(m);
  }
  bool is_square(std::uint64_t a) const;
};

// Convenience spelling of the PrimeFieldCtx constructor.
PrimeFieldCtx fp_make(std::uint64_t p);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Tonelli-Shanks. Returns the canonical root r with r <= p - r when a is a
// nonzero square, 0 for a = 0, absent for a non-residue.
std::optional<std::uint64_t> fp_sqrt(const PrimeFieldCtx& ctx, std::uint64_t a);

// Field-trait wrapper so generic surface/orbit code can run over F_p.
struct FpField {
  using Elem = std::uint64_t;
  const PrimeFieldCtx* ctx;

  Elem add(Elem a, Elem b) const { return ctx->add(a, b); }
  Elem sub(Elem a, Elem b) const { return ctx->sub(a, b); }
  Elem neg(Elem a) const { return ctx->neg(a); }
  Elem mul(Elem a, Elem b) const { return ctx->mul(a, b); }
  Elem inv(Elem a) const { return ctx->inv(a); }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return ctx->from_int(v); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  int cmp(Elem a, Elem b) const { return a < b ? -1 : (a == b ? 0 : 1); }
  std::string format(Elem a) const { return std::to_string(a); }
};

}  // namespace mk3
