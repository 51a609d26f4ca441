#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mk3/errors.hpp"
#include "mk3/prime_field.hpp"

namespace mk3 {

// Point of P^1: Finite(v) = [v:1], Infinity = [1:0]. The formal convention
// 0^-1 = inf makes coordinate inversion total.
template <typename F>
struct P1 {
  bool is_inf;
  typename F::Elem v;  // meaningful iff !is_inf

  static P1 finite(typename F::Elem val) { return {false, std::move(val)}; }
  static P1 infinity(const F& f) { return {true, f.zero()}; }
};

template <typename F>
bool p1_eq(const F& f, const P1<F>& a, const P1<F>& b) {
  if (a.is_inf || b.is_inf) return a.is_inf == b.is_inf;
  return f.eq(a.v, b.v);
}

// Total order: finite values by field order, Infinity last.
template <typename F>
int p1_cmp(const F& f, const P1<F>& a, const P1<F>& b) {
  if (a.is_inf != b.is_inf) return a.is_inf ? 1 : -1;
  if (a.is_inf) return 0;
  return f.cmp(a.v, b.v);
}

template <typename F>
P1<F> p1_invert(const F& f, const P1<F>& a) {
  if (a.is_inf) return P1<F>::finite(f.zero());
  if (f.is_zero(a.v)) return P1<F>::infinity(f);
  return P1<F>::finite(f.inv(a.v));
}

template <typename F>
P1<F> p1_negate(const F& f, const P1<F>& a) {
  if (a.is_inf) return a;  // -[1:0] = [1:0]
  return P1<F>::finite(f.neg(a.v));
}

// Homogeneous coordinate pair of a P^1 point.
template <typename F>
std::array<typename F::Elem, 2> p1_homog(const F& f, const P1<F>& a) {
  if (a.is_inf) return {f.one(), f.zero()};
  return {a.v, f.one()};
}

template <typename F>
using Triple = std::array<P1<F>, 3>;

template <typename F>
bool triple_eq(const F& f, const Triple<F>& a, const Triple<F>& b) {
  return p1_eq(f, a[0], b[0]) && p1_eq(f, a[1], b[1]) && p1_eq(f, a[2], b[2]);
}

template <typename F>
int triple_cmp(const F& f, const Triple<F>& a, const Triple<F>& b) {
  for (int i = 0; i < 3; ++i) {
    int c = p1_cmp(f, a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

// (2,2,2)-form: c[i][j][k] multiplies X1^i X2^(2-i) Y1^j Y2^(2-j) Z1^k Z2^(2-k).
template <typename F>
struct Form222 {
  std::array<std::array<std::array<typename F::Elem, 3>, 3>, 3> c;

  static Form222 zero(const F& f) {
    Form222 r;
    for (auto& pi : r.c)
      for (auto& pj : pi) pj.fill(f.zero());
    return r;
  }
};

// Symmetric MK3 family: a x^2y^2z^2 + b(x^2y^2+x^2z^2+y^2z^2) + c xyz
// + d(x^2+y^2+z^2) + e.
template <typename F>
struct Mk3Surface {
  typename F::Elem a, b, c, d, e;
};

// W_k = MK3(1, 0, k, 1, 0); always non-degenerate for k != 0.
template <typename F>
struct WkSurface {
  typename F::Elem k;

  Mk3Surface<F> mk3(const F& f) const {
    return {f.one(), f.zero(), k, f.one(), f.zero()};
  }
};

template <typename F>
Form222<F> mk3_to_form(const F& f, const Mk3Surface<F>& s) {
  Form222<F> r = Form222<F>::zero(f);
  r.c[2][2][2] = s.a;
  r.c[2][2][0] = r.c[2][0][2] = r.c[0][2][2] = s.b;
  r.c[1][1][1] = s.c;
  r.c[2][0][0] = r.c[0][2][0] = r.c[0][0][2] = s.d;
  r.c[0][0][0] = s.e;
  return r;
}

template <typename F>
Form222<F> wk_form(const F& f, const WkSurface<F>& w) {
  return mk3_to_form(f, w.mk3(f));
}

template <typename F>
bool mk3_nondegenerate(const F& f, const Mk3Surface<F>& s) {
  return !f.eq(f.mul(s.b, s.e), f.mul(s.d, s.d)) &&
         !f.eq(f.mul(s.a, s.d), f.mul(s.b, s.b));
}

namespace detail {

template <typename F>
std::array<typename F::Elem, 3> homog_powers(const F& f, const P1<F>& a) {
  auto [h1, h2] = p1_homog(f, a);
  // index = degree of the first homogeneous coordinate in a degree-2 monomial
  return {f.mul(h2, h2), f.mul(h1, h2), f.mul(h1, h1)};
}

}  // namespace detail

template <typename F>
typename F::Elem form_eval(const F& f, const Form222<F>& form, const Triple<F>& p) {
  auto xp = detail::homog_powers(f, p[0]);
  auto yp = detail::homog_powers(f, p[1]);
  auto zp = detail::homog_powers(f, p[2]);
  typename F::Elem acc = f.zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (f.is_zero(form.c[i][j][k])) continue;
        acc = f.add(acc, f.mul(form.c[i][j][k], f.mul(xp[i], f.mul(yp[j], zp[k]))));
      }
  return acc;
}

template <typename F>
bool contains(const F& f, const Form222<F>& form, const Triple<F>& p) {
  return f.is_zero(form_eval(f, form, p));
}

// q20 Z1^2 + q11 Z1 Z2 + q02 Z2^2 in the homogeneous coordinates of one axis.
template <typename F>
struct BinaryQuadratic {
  typename F::Elem q20, q11, q02;
};

// Restriction of the form to the `axis` coordinate (1-based), substituting
// the other two coordinates of P. Throws IdenticallyZero for degenerate
// base points (impossible on a non-degenerate MK3 surface).
template <typename F>
BinaryQuadratic<F> coord_quadratic(const F& f, const Form222<F>& form,
                                   const Triple<F>& p, int axis) {
  int a1 = axis == 1 ? 1 : 0;          // first substituted coordinate
  int a2 = axis == 3 ? 1 : 2;          // second substituted coordinate
  auto up = detail::homog_powers(f, p[a1]);
  auto vp = detail::homog_powers(f, p[a2]);
  std::array<typename F::Elem, 3> q{f.zero(), f.zero(), f.zero()};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // map (i,j,k) of (X,Y,Z) so that index k follows the chosen axis
        int iu, iv, iw;
        if (axis == 1) {
          iw = i; iu = j; iv = k;
        } else if (axis == 2) {
          iu = i; iw = j; iv = k;
        } else {
          iu = i; iv = j; iw = k;
        }
        if (f.is_zero(form.c[i][j][k])) continue;
        q[iw] = f.add(q[iw], f.mul(form.c[i][j][k], f.mul(up[iu], vp[iv])));
      }
  if (f.is_zero(q[0]) && f.is_zero(q[1]) && f.is_zero(q[2]))
    throw IdenticallyZeroError();
  return {q[2], q[1], q[0]};
}

template <typename F>
typename F::Elem quad_disc(const F& f, const BinaryQuadratic<F>& q) {
  return f.sub(f.mul(q.q11, q.q11),
               f.mul(f.from_int(4), f.mul(q.q20, q.q02)));
}

// ---- F_p specific -----------------------------------------------------------

using FpP1 = P1<FpField>;
using FpTriple = Triple<FpField>;

// Roots of the quadratic in P^1(F_p), deterministic order: finite roots
// ascending, Infinity last; a double root appears once.
std::vector<FpP1> quad_roots_fp(const PrimeFieldCtx& ctx,
                                const BinaryQuadratic<FpField>& q);

// True iff the quadratic has a root in P^1(F_p) (disc is a square; the
// q20 = 0 cases have square disc q11^2 automatically).
bool quad_solvable_fp(const PrimeFieldCtx& ctx, const BinaryQuadratic<FpField>& q);

// Every point of W_k(F_p) exactly once, lexicographic in (x, y, root index)
// with Infinity after all finite values.
std::vector<FpTriple> enumerate_points(const WkSurface<FpField>& w,
                                       const PrimeFieldCtx& ctx);

// Exhaustive singular-locus scan: affine Jacobian test on each point after
// translating infinity coordinates into the affine chart by one of the
// three coordinate-inversion automorphisms.
std::vector<FpTriple> singular_points(const WkSurface<FpField>& w,
                                      const PrimeFieldCtx& ctx);

// Compact integer key for F_p points: coordinate value, or p for Infinity.
inline std::uint64_t fp_point_key(const PrimeFieldCtx& ctx, const FpTriple& t) {
  std::uint64_t n = ctx.p + 1;
  auto c = [&](const FpP1& a) { return a.is_inf ? ctx.p : a.v; };
  return (c(t[0]) * n + c(t[1])) * n + c(t[2]);
}

std::string fp_point_format(const FpTriple& t);
std::string fp_p1_format(const FpP1& a);

// ---- field-generic singular loci -------------------------------------------

// Closed-form singular locus: the four universal singular points, plus the
// extra size-4 orbit exactly when k^4 = 256 (k in {4,-4,4i,-4i}).
template <typename F>
std::vector<Triple<F>> singular_points_closed_form(const F& f,
                                                   const WkSurface<F>& w) {
  auto fin = [&](long long v) { return P1<F>::finite(f.from_int(v)); };
  auto inf = [&] { return P1<F>::infinity(f); };
  std::vector<Triple<F>> out;
  out.push_back({fin(0), fin(0), fin(0)});
  out.push_back({fin(0), inf(), inf()});
  out.push_back({inf(), fin(0), inf()});
  out.push_back({inf(), inf(), fin(0)});
  typename F::Elem k4 = f.mul(f.mul(w.k, w.k), f.mul(w.k, w.k));
  if (f.eq(k4, f.from_int(256))) {
    // zeta = 4/k twists W_4 onto W_k, carrying its extra singular orbit.
    typename F::Elem zeta = f.mul(f.from_int(4), f.inv(w.k));
    typename F::Elem nzeta = f.neg(zeta);
    auto pt = [&](typename F::Elem a, typename F::Elem b, typename F::Elem c) {
      return Triple<F>{P1<F>::finite(a), P1<F>::finite(b), P1<F>::finite(c)};
    };
    out.push_back(pt(zeta, zeta, nzeta));
    out.push_back(pt(zeta, nzeta, zeta));
    out.push_back(pt(nzeta, zeta, zeta));
    out.push_back(pt(nzeta, nzeta, nzeta));
  }
  return out;
}

// Singular points of the fiber of pi over `xi` on the given axis: absent if
// the fiber is smooth (xi not in {0, inf} and 2 xi^2 +- k xi +- 2 all
// nonzero); otherwise the set of singular fiber points with coordinates in
// the working field. SqrtFn(elem) -> optional<Elem> supplies square roots
// (used only to realize v with v^2 = -1).
template <typename F, typename SqrtFn>
std::optional<std::vector<Triple<F>>> singular_fibers(const F& f,
                                                      const WkSurface<F>& w,
                                                      int axis, const P1<F>& xi,
                                                      SqrtFn&& sqrt_fn) {
  auto place = [&](const P1<F>& base, P1<F> s, P1<F> t) {
    Triple<F> r;
    r[axis - 1] = base;
    r[axis % 3] = std::move(s);
    r[(axis + 1) % 3] = std::move(t);
    return r;
  };
  std::vector<Triple<F>> out;
  if (xi.is_inf) {
    out.push_back(place(xi, P1<F>::infinity(f), P1<F>::finite(f.zero())));
    out.push_back(place(xi, P1<F>::finite(f.zero()), P1<F>::infinity(f)));
    return out;
  }
  if (f.is_zero(xi.v)) {
    out.push_back(place(xi, P1<F>::finite(f.zero()), P1<F>::finite(f.zero())));
    out.push_back(place(xi, P1<F>::infinity(f), P1<F>::infinity(f)));
    return out;
  }
  // Finite nonzero xi: fiber singular iff k = 2u(xi + w xi^-1), u,w in {+-1};
  // the singular points are (xi, v, -u v^3), (xi, -v, u v^3) with v^2 = w.
  const typename F::Elem xinv = f.inv(xi.v);
  bool singular = false;
  auto add_pair = [&](const typename F::Elem& v, const typename F::Elem& w3) {
    out.push_back(place(xi, P1<F>::finite(v), P1<F>::finite(w3)));
    out.push_back(place(xi, P1<F>::finite(f.neg(v)), P1<F>::finite(f.neg(w3))));
  };
  for (int u : {1, -1}) {
    for (int wsign : {1, -1}) {
      typename F::Elem rhs =
          f.mul(f.from_int(2 * u),
                f.add(xi.v, f.mul(f.from_int(wsign), xinv)));
      if (!f.eq(w.k, rhs)) continue;
      singular = true;
      if (wsign == 1) {
        // v = 1: points (xi, 1, -u), (xi, -1, u)
        add_pair(f.one(), f.from_int(-u));
      } else {
        // v^2 = -1: points (xi, v, u v), (xi, -v, -u v) since -v^3 = v
        if (auto v = sqrt_fn(f.neg(f.one()))) {
          add_pair(*v, f.mul(f.from_int(u), *v));
        }
      }
    }
  }
  if (!singular) return std::nullopt;
  return out;
}

}  // namespace mk3
