#include "mk3/prime_field.hpp"

namespace mk3 {

std::uint64_t PrimeFieldCtx::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeFieldCtx::inv(std::uint64_t a) const {
  if (a == 0) throw DivisionByZeroError();
  return pow(a, p - 2);
}

bool PrimeFieldCtx::is_square(std::uint64_t a) const {
  if (a == 0) return true;
  return pow(a, (p - 1) / 2) == 1;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all 64-bit integers.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeFieldCtx::PrimeFieldCtx(std::uint64_t prime) : p(prime) {
  if (p == 2) throw CharacteristicTwoError();
  if (p < 3 || !is_prime_u64(p)) throw NotPrimeError(p);
  q = p - 1;
  s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  nonresidue = 2;
  while (is_square(nonresidue)) ++nonresidue;
}

PrimeFieldCtx fp_make(std::uint64_t p) { return PrimeFieldCtx(p); }

std::optional<std::uint64_t> fp_sqrt(const PrimeFieldCtx& ctx, std::uint64_t a) {
  if (a == 0) return 0;
  if (!ctx.is_square(a)) return std::nullopt;
  std::uint64_t r;
  if (ctx.s == 1) {
    r = ctx.pow(a, (ctx.p + 1) / 4);
  } else {
    // Tonelli-Shanks on the 2-Sylow part of F_p^*.
    std::uint64_t z = ctx.pow(ctx.nonresidue, ctx.q);
    std::uint64_t t = ctx.pow(a, ctx.q);
    r = ctx.pow(a, (ctx.q + 1) / 2);
    unsigned m = ctx.s;
    while (t != 1) {
      std::uint64_t t2 = t;
      unsigned i = 0;
      while (t2 != 1) {
        t2 = ctx.mul(t2, t2);
        ++i;
      }
      std::uint64_t b = z;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = ctx.mul(b, b);
      r = ctx.mul(r, b);
      z = ctx.mul(b, b);
      t = ctx.mul(t, z);
      m = i;
    }
  }
  return std::min(r, ctx.p - r);
}

}  // namespace mk3
