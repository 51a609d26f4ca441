#include "mk3/geometry.hpp"

#include <algorithm>

namespace mk3 {

std::vector<FpP1> quad_roots_fp(const PrimeFieldCtx& ctx,
                                const BinaryQuadratic<FpField>& q) {
  std::vector<FpP1> roots;
  if (q.q20 != 0) {
    // z^2 coefficient nonzero: both roots finite
    std::uint64_t disc = ctx.sub(ctx.mul(q.q11, q.q11),
                                 ctx.mul(4 % ctx.p, ctx.mul(q.q20, q.q02)));
    auto r = fp_sqrt(ctx, disc);
    if (!r) return roots;
    std::uint64_t inv2a = ctx.inv(ctx.mul(2, q.q20));
    std::uint64_t r1 = ctx.mul(ctx.sub(*r, q.q11), inv2a);
    if (*r == 0) {
      roots.push_back(FpP1::finite(r1));  // double root, listed once
      return roots;
    }
    std::uint64_t r2 = ctx.mul(ctx.sub(ctx.neg(*r), q.q11), inv2a);
    if (r2 < r1) std::swap(r1, r2);
    roots.push_back(FpP1::finite(r1));
    roots.push_back(FpP1::finite(r2));
    return roots;
  }
  if (q.q11 != 0) {
    // q11 z1 z2 + q02 z2^2: simple roots -q02/q11 and Infinity
    roots.push_back(FpP1::finite(ctx.mul(ctx.neg(q.q02), ctx.inv(q.q11))));
    roots.push_back({true, 0});
    return roots;
  }
  // q02 z2^2 with q02 != 0 (all-zero is rejected upstream): double root Infinity
  roots.push_back({true, 0});
  return roots;
}

bool quad_solvable_fp(const PrimeFieldCtx& ctx, const BinaryQuadratic<FpField>& q) {
  std::uint64_t disc = ctx.sub(ctx.mul(q.q11, q.q11),
                               ctx.mul(4 % ctx.p, ctx.mul(q.q20, q.q02)));
  return ctx.is_square(disc);
}

std::vector<FpTriple> enumerate_points(const WkSurface<FpField>& w,
                                       const PrimeFieldCtx& ctx) {
  FpField f{&ctx};
  Form222<FpField> form = wk_form(f, w);
  std::vector<FpTriple> pts;
  auto per_pair = [&](const FpP1& x, const FpP1& y) {
    Triple<FpField> base{x, y, FpP1::finite(0)};
    auto q = coord_quadratic(f, form, base, 3);
    for (const FpP1& z : quad_roots_fp(ctx, q)) pts.push_back({x, y, z});
  };
  auto each_p1 = [&](auto&& fn) {
    for (std::uint64_t v = 0; v < ctx.p; ++v) fn(FpP1::finite(v));
    fn(FpP1{true, 0});
  };
  each_p1([&](const FpP1& x) { each_p1([&](const FpP1& y) { per_pair(x, y); }); });
  return pts;
}

namespace {

// Affine Jacobian of x^2+y^2+z^2+x^2y^2z^2+kxyz at an all-finite point.
bool affine_singular(const PrimeFieldCtx& ctx, std::uint64_t k, std::uint64_t x,
                     std::uint64_t y, std::uint64_t z) {
  auto d = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // 2a + 2a b^2 c^2 + k b c
    std::uint64_t bc = ctx.mul(b, c);
    return ctx.add(ctx.add(ctx.mul(2, a), ctx.mul(2, ctx.mul(a, ctx.mul(bc, bc)))),
                   ctx.mul(k, bc));
  };
  return d(x, y, z) == 0 && d(y, x, z) == 0 && d(z, x, y) == 0;
}

}  // namespace

std::vector<FpTriple> singular_points(const WkSurface<FpField>& w,
                                      const PrimeFieldCtx& ctx) {
  FpField f{&ctx};
  // Coordinate-inversion patterns: identity plus the three double inversions
  // fixing W_k. Every surface point lands in the affine chart under one of
  // them, and they commute with the Jacobian criterion.
  static constexpr std::array<std::array<int, 3>, 4> patterns{
      {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  std::vector<FpTriple> out;
  for (const FpTriple& pt : enumerate_points(w, ctx)) {
    bool decided = false;
    for (const auto& pat : patterns) {
      FpTriple im = pt;
      bool affine = true;
      for (int i = 0; i < 3; ++i) {
        if (pat[i] == -1) im[i] = p1_invert(f, im[i]);
        affine = affine && !im[i].is_inf;
      }
      if (!affine) continue;
      if (affine_singular(ctx, w.k, im[0].v, im[1].v, im[2].v)) out.push_back(pt);
      decided = true;
      break;
    }
    (void)decided;  // every W_k point is affine in some chart
  }
  return out;
}

std::string fp_p1_format(const FpP1& a) {
  return a.is_inf ? std::string("inf") : std::to_string(a.v);
}

std::string fp_point_format(const FpTriple& t) {
  return "(" + fp_p1_format(t[0]) + "," + fp_p1_format(t[1]) + "," +
         fp_p1_format(t[2]) + ")";
}

}  // namespace mk3
