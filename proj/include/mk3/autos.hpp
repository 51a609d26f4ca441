#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "mk3/errors.hpp"
#include "mk3/geometry.hpp"

namespace mk3 {

// Sheet-swap involution along one coordinate axis (1-based).
struct SigmaGen {
  int axis;
};

// Element of the order-24 group of coordinate permutations combined with
// even sign changes: P'[i] = signs[i] * P[perm[i]] (0-based perm).
struct CircGen {
  std::array<int, 3> perm;
  std::array<int, 3> signs;  // entries +-1, product +1
};

// Coordinate-wise inversion pattern (entries +-1, product +1); -1 inverts.
struct DeltaGen {
  std::array<int, 3> pattern;
};

using Generator = std::variant<SigmaGen, CircGen, DeltaGen>;

// Applied left to right; the empty word is the identity.
using GroupWord = std::vector<Generator>;

inline CircGen circ_identity() { return {{0, 1, 2}, {1, 1, 1}}; }

// Transposition of coordinates i and j (1-based).
CircGen circ_tau(int i, int j);

// Sign change -1 on coordinates i and j (1-based).
CircGen circ_eps(int i, int j);

// Inversion on coordinates i and j (1-based).
DeltaGen delta_gen(int i, int j);

// g then h, as an element: compose_circ(g,h) acts like applying g first.
CircGen compose_circ(const CircGen& g, const CircGen& h);

bool circ_eq(const CircGen& a, const CircGen& b);

// All 24 elements, deterministic order.
std::vector<CircGen> all_circ_elements();

// All 4 inversion patterns including the identity pattern.
std::vector<DeltaGen> all_delta_patterns();

// Generating set used for orbit computations: the three sheet swaps plus
// generators of the permutation/sign group, optionally the inversions.
std::vector<Generator> standard_generators(bool with_delta = false);

// Generators of the order-24 permutation/sign group alone.
std::vector<Generator> circ_generators();

// The three sheet swaps alone.
std::vector<Generator> sigma_generators();

// Permutation/sign group extended by the inversions, 96 elements.
std::vector<Generator> circ_delta_generators();

// Generators stabilizing every fiber of the projection along `axis`: the two
// sheet swaps, the transposition and the sign change of the other two axes.
std::vector<Generator> fibral_generators(int axis);

std::string format_generator(const Generator& g);
std::string format_word(const GroupWord& w);
GroupWord parse_word(const std::string& text);

template <typename F>
Triple<F> apply_circ(const F& f, const CircGen& g, const Triple<F>& p) {
  Triple<F> r;
  for (int i = 0; i < 3; ++i) {
    r[i] = p[g.perm[i]];
    if (g.signs[i] == -1) r[i] = p1_negate(f, r[i]);
  }
  return r;
}

template <typename F>
Triple<F> apply_delta(const F& f, const DeltaGen& d, const Triple<F>& p) {
  Triple<F> r = p;
  for (int i = 0; i < 3; ++i)
    if (d.pattern[i] == -1) r[i] = p1_invert(f, r[i]);
  return r;
}

// Move the axis coordinate to the other root of its coordinate quadratic.
// Case analysis on the quadratic q20 Z1^2 + q11 Z1 Z2 + q02 Z2^2:
//   q20 != 0: both roots finite, image = -q11/q20 - v (double root: fixed);
//   q20 = 0, q11 != 0: roots {-q02/q11, inf}, swapped;
//   q20 = q11 = 0: double root at infinity, fixed.
template <typename F>
Triple<F> apply_sigma(const F& f, const Form222<F>& form, const Triple<F>& p,
                      int axis) {
  BinaryQuadratic<F> q;
  try {
    q = coord_quadratic(f, form, p, axis);
  } catch (const IdenticallyZeroError&) {
    throw DegenerateFiberError();
  }
  const P1<F>& c = p[axis - 1];
  Triple<F> r = p;
  if (!f.is_zero(q.q20)) {
    if (c.is_inf) throw NotOnSurfaceError();
    typename F::Elem qc = f.add(
        f.mul(q.q20, f.mul(c.v, c.v)), f.add(f.mul(q.q11, c.v), q.q02));
    if (!f.is_zero(qc)) throw NotOnSurfaceError();
    typename F::Elem sum = f.neg(f.mul(q.q11, f.inv(q.q20)));
    r[axis - 1] = P1<F>::finite(f.sub(sum, c.v));
  } else if (!f.is_zero(q.q11)) {
    typename F::Elem fin = f.neg(f.mul(q.q02, f.inv(q.q11)));
    if (c.is_inf) {
      r[axis - 1] = P1<F>::finite(fin);
    } else {
      if (!f.eq(c.v, fin)) throw NotOnSurfaceError();
      r[axis - 1] = P1<F>::infinity(f);
    }
  } else {
    if (!c.is_inf) throw NotOnSurfaceError();
  }
  return r;
}

template <typename F>
Triple<F> apply_generator(const F& f, const Form222<F>& form, const Generator& g,
                          const Triple<F>& p) {
  if (auto* s = std::get_if<SigmaGen>(&g)) return apply_sigma(f, form, p, s->axis);
  if (auto* c = std::get_if<CircGen>(&g)) return apply_circ(f, *c, p);
  return apply_delta(f, std::get<DeltaGen>(g), p);
}

template <typename F>
Triple<F> apply_word(const F& f, const Form222<F>& form, const GroupWord& w,
                     const Triple<F>& p) {
  Triple<F> r = p;
  for (const Generator& g : w) r = apply_generator(f, form, g, r);
  return r;
}

// (x,y,z) -> (zeta x, zeta y, zeta z) carries W_k onto W_{zeta^3 k}.
template <typename F>
Triple<F> wk_twist(const F& f, const Triple<F>& p, const typename F::Elem& zeta) {
  typename F::Elem z2 = f.mul(zeta, zeta);
  if (!f.eq(f.mul(z2, z2), f.one())) throw BadTwistError();
  Triple<F> r;
  for (int i = 0; i < 3; ++i)
    r[i] = p[i].is_inf ? p[i] : P1<F>::finite(f.mul(zeta, p[i].v));
  return r;
}

}  // namespace mk3
