#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "mk3/autos.hpp"
#include "mk3/exact_field.hpp"
#include "mk3/field_parse.hpp"
#include "mk3/geometry.hpp"

using namespace mk3;

namespace {

FpP1 fin(const PrimeFieldCtx& ctx, long long v) {
  FpField f{&ctx};
  return FpP1::finite(f.from_int(v));
}

FpP1 inf() { return FpP1{true, 0}; }

FpTriple tr(const PrimeFieldCtx& ctx, long long a, long long b, long long c) {
  return {fin(ctx, a), fin(ctx, b), fin(ctx, c)};
}

bool same(const PrimeFieldCtx& ctx, const FpTriple& a, const FpTriple& b) {
  FpField f{&ctx};
  return triple_eq(f, a, b);
}

}  // namespace

TEST_CASE("sigma is an involution and fixes the other coordinates") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    PrimeFieldCtx ctx = fp_make(p);
    FpField f{&ctx};
    for (std::uint64_t k = 1; k < p; ++k) {
      WkSurface<FpField> w{k};
      auto form = wk_form(f, w);
      for (auto& pt : enumerate_points(w, ctx))
        for (int axis = 1; axis <= 3; ++axis) {
          FpTriple im = apply_sigma(f, form, pt, axis);
          for (int i = 0; i < 3; ++i)
            if (i != axis - 1) CHECK(p1_eq(f, im[i], pt[i]));
          CHECK(contains(f, form, im));
          CHECK(triple_eq(f, apply_sigma(f, form, im, axis), pt));
        }
    }
  }
}

TEST_CASE("sigma pinned examples") {
  {
    PrimeFieldCtx ctx = fp_make(47);
    FpField f{&ctx};
    auto form = wk_form(f, WkSurface<FpField>{11});
    CHECK(same(ctx, apply_sigma(f, form, tr(ctx, 3, 6, 11), 3), tr(ctx, 3, 6, 15)));
  }
  {
    PrimeFieldCtx ctx = fp_make(53);
    FpField f{&ctx};
    auto form = wk_form(f, WkSurface<FpField>{8});
    CHECK(same(ctx, apply_sigma(f, form, tr(ctx, 16, 21, 39), 1),
               tr(ctx, 16, 21, 39)));
  }
  {
    // (38,-38,1) reaches the sigma3-fixed point (15,11,12) by s3 s2 followed
    // by the sign change e12; the sheet swaps alone cannot move x = 38.
    PrimeFieldCtx ctx = fp_make(53);
    FpField f{&ctx};
    auto form = wk_form(f, WkSurface<FpField>{11});
    FpTriple p0 = tr(ctx, 38, -38, 1);
    REQUIRE(contains(f, form, p0));
    FpTriple p1 = apply_sigma(f, form, p0, 3);
    CHECK(same(ctx, p1, tr(ctx, 38, -38, 12)));
    FpTriple p2 = apply_sigma(f, form, p1, 2);
    CHECK(same(ctx, p2, tr(ctx, 38, -11, 12)));
    FpTriple p3 = apply_circ(f, circ_eps(1, 2), p2);
    CHECK(same(ctx, p3, tr(ctx, 15, 11, 12)));
    CHECK(same(ctx, apply_sigma(f, form, p3, 3), p3));
    // the same chain as a parsed left-to-right word
    FpTriple pw = apply_word(f, form, parse_word("s3 s2 e12"), p0);
    CHECK(same(ctx, pw, p3));
  }
}

TEST_CASE("sigma3 closed form on affine points") {
  PrimeFieldCtx ctx = fp_make(47);
  FpField f{&ctx};
  std::uint64_t k = 11;
  WkSurface<FpField> w{k};
  auto form = wk_form(f, w);
  for (auto& pt : enumerate_points(w, ctx)) {
    if (pt[0].is_inf || pt[1].is_inf || pt[2].is_inf) continue;
    std::uint64_t x = pt[0].v, y = pt[1].v, z = pt[2].v;
    std::uint64_t den = ctx.add(1, ctx.mul(ctx.mul(x, x), ctx.mul(y, y)));
    if (den == 0) continue;
    std::uint64_t zz = ctx.sub(
        ctx.neg(ctx.mul(ctx.mul(k, ctx.mul(x, y)), ctx.inv(den))), z);
    FpTriple im = apply_sigma(f, form, pt, 3);
    REQUIRE(!im[2].is_inf);
    CHECK(im[2].v == zz);
  }
}

TEST_CASE("sigma error conditions") {
  PrimeFieldCtx ctx = fp_make(7);
  FpField f{&ctx};
  auto form = wk_form(f, WkSurface<FpField>{1});
  CHECK_THROWS_AS(apply_sigma(f, form, tr(ctx, 1, 1, 1), 3), NotOnSurfaceError);
  CHECK_THROWS_AS(apply_sigma(f, form, {inf(), inf(), fin(ctx, 1)}, 3),
                  NotOnSurfaceError);
  Mk3Surface<FpField> markoff{0, 0, f.from_int(-3), 1, 0};
  auto mform = mk3_to_form(f, markoff);
  CHECK_THROWS_AS(apply_sigma(f, mform, {inf(), inf(), fin(ctx, 0)}, 3),
                  DegenerateFiberError);
}

TEST_CASE("conjugation of sheet swaps by the circular group") {
  // tau^-1 sigma_a tau = sigma_{tau(a)}; every even sign change centralizes.
  std::array<CircGen, 3> taus{circ_tau(1, 2), circ_tau(1, 3), circ_tau(2, 3)};
  std::array<CircGen, 3> epss{circ_eps(1, 2), circ_eps(1, 3), circ_eps(2, 3)};
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19}) {
    PrimeFieldCtx ctx = fp_make(p);
    FpField f{&ctx};
    for (std::uint64_t k = 1; k < p; ++k) {
      WkSurface<FpField> w{k};
      auto form = wk_form(f, w);
      auto pts = enumerate_points(w, ctx);
      for (auto& pt : pts) {
        for (const auto& tau : taus)
          for (int axis = 1; axis <= 3; ++axis) {
            FpTriple lhs =
                apply_circ(f, tau, apply_sigma(f, form, apply_circ(f, tau, pt), axis));
            int image_axis = tau.perm[axis - 1] + 1;
            CHECK(triple_eq(f, lhs, apply_sigma(f, form, pt, image_axis)));
          }
        for (const auto& eps : epss)
          for (int axis = 1; axis <= 3; ++axis) {
            FpTriple lhs =
                apply_circ(f, eps, apply_sigma(f, form, apply_circ(f, eps, pt), axis));
            CHECK(triple_eq(f, lhs, apply_sigma(f, form, pt, axis)));
          }
      }
    }
  }
}

TEST_CASE("the 24 circular elements form a group matching pointwise action") {
  auto els = all_circ_elements();
  REQUIRE(els.size() == 24);
  auto key = [](const CircGen& g) {
    int k = 0;
    for (int i = 0; i < 3; ++i) k = k * 16 + g.perm[i] * 4 + (g.signs[i] == 1 ? 0 : 1);
    return k;
  };
  std::set<int> keys;
  for (auto& g : els) keys.insert(key(g));
  CHECK(keys.size() == 24);

  PrimeFieldCtx ctx = fp_make(31);
  FpField f{&ctx};
  std::mt19937 rng(5);
  std::vector<FpTriple> samples;
  for (int t = 0; t < 8; ++t) {
    auto rnd = [&]() -> FpP1 {
      std::uint64_t r = rng() % 32;
      return r == 31 ? inf() : FpP1::finite(r);
    };
    samples.push_back({rnd(), rnd(), rnd()});
  }
  for (auto& g : els)
    for (auto& h : els) {
      CircGen gh = compose_circ(g, h);
      CHECK(keys.count(key(gh)) == 1);
      for (auto& pt : samples)
        CHECK(triple_eq(f, apply_circ(f, h, apply_circ(f, g, pt)),
                        apply_circ(f, gh, pt)));
    }
  // inverses: every element composes with some element to the identity
  for (auto& g : els) {
    bool has_inverse = false;
    for (auto& h : els)
      if (circ_eq(compose_circ(g, h), circ_identity())) has_inverse = true;
    CHECK(has_inverse);
  }
}

TEST_CASE("circ and delta basics") {
  PrimeFieldCtx ctx = fp_make(11);
  FpField f{&ctx};
  // eps_{-1,-1,1}
  CHECK(same(ctx, apply_circ(f, circ_eps(1, 2), tr(ctx, 3, 4, 5)),
             tr(ctx, -3, -4, 5)));
  CHECK(same(ctx, apply_circ(f, circ_identity(), tr(ctx, 3, 4, 5)),
             tr(ctx, 3, 4, 5)));
  FpTriple sym{fin(ctx, 0), inf(), inf()};
  CHECK(triple_eq(f, apply_circ(f, circ_tau(2, 3), sym), sym));
  // delta_{-1,-1,1}(0,inf,z) = (inf,0,z)
  FpTriple d0{fin(ctx, 0), inf(), fin(ctx, 7)};
  FpTriple d1 = apply_delta(f, delta_gen(1, 2), d0);
  CHECK(triple_eq(f, d1, FpTriple{inf(), fin(ctx, 0), fin(ctx, 7)}));
  CHECK(triple_eq(f, apply_delta(f, delta_gen(1, 2), d1), d0));
  // all-finite nonzero point: coordinate-wise reciprocal on the pattern
  FpTriple r = apply_delta(f, delta_gen(1, 3), tr(ctx, 2, 5, 3));
  CHECK(same(ctx, r, tr(ctx, 6, 5, 4)));  // 2^-1 = 6, 3^-1 = 4 mod 11
  CHECK(all_delta_patterns().size() == 4);
}

TEST_CASE("delta patterns preserve W_k setwise") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19}) {
    PrimeFieldCtx ctx = fp_make(p);
    FpField f{&ctx};
    for (std::uint64_t k = 1; k < p; ++k) {
      WkSurface<FpField> w{k};
      auto form = wk_form(f, w);
      for (auto& pt : enumerate_points(w, ctx))
        for (auto& d : all_delta_patterns())
          CHECK(contains(f, form, apply_delta(f, d, pt)));
    }
  }
}

TEST_CASE("fibral generators stabilize every fiber") {
  CHECK(fibral_generators(1).size() == 4);
  CHECK(format_generator(fibral_generators(1)[0]) == "s2");
  CHECK(format_generator(fibral_generators(1)[1]) == "s3");
  CHECK(format_generator(fibral_generators(1)[2]) == "t23");
  CHECK(format_generator(fibral_generators(1)[3]) == "e23");
  CHECK(format_generator(fibral_generators(3)[0]) == "s1");
  CHECK(format_generator(fibral_generators(3)[2]) == "t12");

  PrimeFieldCtx ctx = fp_make(7);
  FpField f{&ctx};
  WkSurface<FpField> w{1};
  auto form = wk_form(f, w);
  for (auto& pt : enumerate_points(w, ctx))
    for (int axis = 1; axis <= 3; ++axis)
      for (auto& g : fibral_generators(axis)) {
        FpTriple im = apply_generator(f, form, g, pt);
        CHECK(p1_eq(f, im[axis - 1], pt[axis - 1]));
        CHECK(contains(f, form, im));
      }
}

TEST_CASE("wk_twist") {
  {
    PrimeFieldCtx ctx = fp_make(13);
    FpField f{&ctx};
    WkSurface<FpField> w{3};
    auto neg_form = wk_form(f, WkSurface<FpField>{ctx.neg(3)});
    auto pts = enumerate_points(w, ctx);
    std::set<std::uint64_t> images;
    for (auto& pt : pts) {
      FpTriple im = wk_twist(f, pt, f.from_int(-1));
      CHECK(contains(f, neg_form, im));
      images.insert(fp_point_key(ctx, im));
    }
    CHECK(images.size() == pts.size());
    CHECK(images.size() ==
          enumerate_points(WkSurface<FpField>{ctx.neg(3)}, ctx).size());
    // zeta = 1 is the identity
    for (auto& pt : pts) CHECK(triple_eq(f, wk_twist(f, pt, f.one()), pt));
    // zeta = i = 5: W_1 -> W_{5^3} = W_8
    std::uint64_t i5 = 5;
    REQUIRE(ctx.mul(i5, i5) == ctx.neg(1));
    WkSurface<FpField> w1{1};
    auto form8 = wk_form(f, WkSurface<FpField>{8});
    for (auto& pt : enumerate_points(w1, ctx))
      CHECK(contains(f, form8, wk_twist(f, pt, i5)));
    CHECK_THROWS_AS(wk_twist(f, tr(ctx, 1, 1, 1), f.from_int(2)), BadTwistError);
  }
  {
    // exact field: zeta = i over Q(i)
    auto Qi = parse_field("Q[i]/(i^2+1)");
    CharZeroField f{Qi};
    auto i_el = f.F->named_gen("i");
    Triple<CharZeroField> pt{P1<CharZeroField>::finite(f.one()),
                             P1<CharZeroField>::finite(i_el),
                             P1<CharZeroField>::infinity(f)};
    // (1,i,inf) on W_1: twist by i sends it to (i,-1,inf) on W_{-i}
    auto form1 = wk_form(f, WkSurface<CharZeroField>{f.one()});
    REQUIRE(contains(f, form1, pt));
    auto im = wk_twist(f, pt, i_el);
    auto formni = wk_form(f, WkSurface<CharZeroField>{f.neg(i_el)});
    CHECK(contains(f, formni, im));
    CHECK(f.eq(im[0].v, i_el));
    CHECK(f.eq(im[1].v, f.from_int(-1)));
    CHECK(im[2].is_inf);
    CHECK_THROWS_AS(wk_twist(f, pt, f.from_int(3)), BadTwistError);
  }
}

TEST_CASE("standard generator sets") {
  auto g = standard_generators();
  CHECK(g.size() == 7);
  CHECK(format_word(GroupWord(g.begin(), g.end())) == "s1 s2 s3 t12 t23 e12 e13");
  auto gd = standard_generators(true);
  CHECK(gd.size() == 9);
  CHECK(format_generator(gd[7]) == "d12");
  CHECK(format_generator(gd[8]) == "d13");
  // the four circular generators generate all 24 elements
  std::set<std::string> closure;
  std::vector<CircGen> frontier{circ_identity()};
  closure.insert(format_generator(Generator{circ_identity()}));
  std::array<CircGen, 4> gens{circ_tau(1, 2), circ_tau(2, 3), circ_eps(1, 2),
                              circ_eps(1, 3)};
  while (!frontier.empty()) {
    CircGen cur = frontier.back();
    frontier.pop_back();
    for (auto& gen : gens) {
      CircGen nxt = compose_circ(cur, gen);
      if (closure.insert(format_generator(Generator{nxt})).second)
        frontier.push_back(nxt);
    }
  }
  CHECK(closure.size() == 24);
}

TEST_CASE("generator word parsing and formatting") {
  auto w = parse_word("s1 t13 e23 d12 id");
  REQUIRE(w.size() == 5);
  CHECK(format_word(w) == "s1 t13 e23 d12 id");
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("s4"), ParseError);
  CHECK_THROWS_AS(parse_word("t21"), ParseError);
  CHECK_THROWS_AS(parse_word("x12"), ParseError);
  CHECK_THROWS_AS(parse_word("s1 junk"), ParseError);
  // a 3-cycle formats as a generic element, not a token
  CircGen cyc = compose_circ(circ_tau(1, 2), circ_tau(2, 3));
  CHECK(format_generator(Generator{cyc}).substr(0, 2) == "g[");
}

TEST_CASE("sigma over exact fields") {
  // (1,i,0) on W_1 over Q(i): sigma3 sends z = 0 to the other root
  auto Qi = parse_field("Q[i]/(i^2+1)");
  CharZeroField f{Qi};
  auto i_el = f.F->named_gen("i");
  WkSurface<CharZeroField> w{f.one()};
  auto form = wk_form(f, w);
  Triple<CharZeroField> pt{P1<CharZeroField>::finite(f.one()),
                           P1<CharZeroField>::finite(i_el),
                           P1<CharZeroField>::finite(f.zero())};
  REQUIRE(contains(f, form, pt));
  // q20 = 1 + x^2 y^2 = 1 - 1 = 0, q11 = k x y = i: roots {0 = -q02/q11, inf}
  auto im = apply_sigma(f, form, pt, 3);
  CHECK(im[2].is_inf);
  auto back = apply_sigma(f, form, im, 3);
  CHECK(triple_eq(f, back, pt));
  // sigma1 on (1,i,0): x-quadratic is x^2 - 1 (q11 = kyz = 0), roots +-1
  auto im1 = apply_sigma(f, form, pt, 1);
  CHECK(contains(f, form, im1));
  CHECK(f.eq(im1[0].v, f.from_int(-1)));
  CHECK(triple_eq(f, apply_sigma(f, form, im1, 1), pt));
}
