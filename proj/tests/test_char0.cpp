#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mk3/autos.hpp"
#include "mk3/char0.hpp"
#include "mk3/exact_field.hpp"
#include "mk3/orbits.hpp"

using namespace mk3;

namespace {

FpTriple tr(const FpField& f, long long a, long long b, long long c) {
  return {FpP1::finite(f.from_int(a)), FpP1::finite(f.from_int(b)),
          FpP1::finite(f.from_int(c))};
}

// Census representative of the twist class {k, -k, ik, -ik}: the smallest
// residue, with the i-multiples only when -1 is a square.
std::uint64_t twist_canonical(const PrimeFieldCtx& ctx, std::uint64_t k) {
  FpField f{&ctx};
  std::uint64_t best = std::min(k, ctx.p - k);
  for (std::uint64_t x = 1; x < ctx.p; ++x)
    if (f.mul(x, x) == ctx.p - 1) {
      std::uint64_t ik = f.mul(x, k);
      best = std::min({best, ik, ctx.p - ik});
      break;
    }
  return best;
}

std::set<std::uint64_t> finite_coordinate_values(const TripleSet<FpField>& orb,
                                                 std::size_t* inf_count) {
  std::set<std::uint64_t> vals;
  *inf_count = 0;
  for (const auto& t : orb)
    for (const auto& c : t) {
      if (c.is_inf)
        ++*inf_count;
      else
        vals.insert(c.v);
    }
  return vals;
}

}  // namespace

TEST_CASE("family catalogue and verification pins") {
  struct Pin {
    const char* name;
    std::size_t size;
    std::vector<std::size_t> circ;
    std::vector<std::size_t> sigma;
  };
  const std::vector<Pin> pins = {
      {"size1", 1, {1}, {1}},
      {"size3", 3, {3}, {1, 1, 1}},
      {"size4", 4, {4}, {1, 1, 1, 1}},
      {"size24", 24, {12, 12}, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
      {"size48", 48, {24, 24}, {8, 8, 8, 8, 8, 8}},
      {"size64", 64, {4, 12, 12, 12, 24}, {16, 16, 16, 16}},
      {"size96", 96, {24, 24, 12, 12, 12, 12}, {32, 32, 32}},
      {"size144",
       144,
       {24, 24, 24, 24, 12, 24, 12},
       {12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12}},
      {"size160",
       160,
       {4, 24, 12, 24, 12, 24, 12, 24, 24},
       {40, 40, 40, 40}},
      {"size192",
       192,
       {24, 24, 24, 24, 24, 24, 24, 24},
       {32, 32, 32, 32, 32, 32}},
  };

  REQUIRE(family_names().size() == pins.size());
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const Pin& pin = pins[i];
    CAPTURE(pin.name);
    CHECK(family_names()[i] == pin.name);
    FiniteOrbitFamily fam = build_family(pin.name);
    CHECK(fam.expected_size == pin.size);
    FamilyReport rep = verify_family(fam);
    CHECK(rep.found == pin.size);
    CHECK(rep.circ_sizes == pin.circ);
    CHECK(rep.sigma_sizes == pin.sigma);
  }
}

TEST_CASE("defining relations of the specialized families") {
  SUBCASE("size64 cubic forces the seed identities") {
    FiniteOrbitFamily fam = build_family("size64");
    CharZeroField f{fam.field};
    ExactElem b = fam.field->gen();
    ExactElem b2 = f.mul(b, b);
    ExactElem b3 = f.mul(b2, b);
    ExactElem b4 = f.mul(b2, b2);
    ExactElem b6 = f.mul(b3, b3);
    // (b,b,b) on the surface <=> b^6 + k b^3 + 3 b^2 = 0
    ExactElem lhs = f.add(b6, f.add(f.mul(fam.k, b3), f.mul(f.from_int(3), b2)));
    CHECK(f.is_zero(lhs));
    // (b,b,1) on the surface <=> b^4 + (k+2) b^2 + 1 = 0
    ExactElem lhs2 =
        f.add(b4, f.add(f.mul(f.add(fam.k, f.from_int(2)), b2), f.one()));
    CHECK(f.is_zero(lhs2));
  }
  SUBCASE("size96 quartic puts the infinite seeds on the surface") {
    FiniteOrbitFamily fam = build_family("size96");
    CharZeroField f{fam.field};
    ExactElem m1 = f.from_int(-1);
    for (std::size_t i : {3u, 5u}) {
      const ZeroTriple& s = fam.seeds[i];
      REQUIRE(s[2].is_inf);
      ExactElem xy = f.mul(s[0].v, s[1].v);
      CHECK(f.eq(f.mul(xy, xy), m1));
    }
  }
  SUBCASE("size144 parameter factors through both generators") {
    FiniteOrbitFamily fam = build_family("size144");
    CharZeroField f{fam.field};
    ExactElem a = fam.field->gen();
    ExactElem b = fam.field->named_gen("b");
    ExactElem lhs = f.neg(
        f.mul(f.add(a, f.inv(a)), f.add(b, f.inv(b))));
    CHECK(f.eq(fam.k, lhs));
  }
  SUBCASE("size160 sheet-swap composite has the closed rational form") {
    FiniteOrbitFamily fam = build_family("size160");
    CharZeroField f{fam.field};
    WkSurface<CharZeroField> w{fam.k};
    Form222<CharZeroField> form = wk_form(f, w);
    ExactElem b = fam.field->gen();
    ZeroTriple p{ZeroP1::finite(b), ZeroP1::finite(b), ZeroP1::finite(b)};
    ZeroTriple got = apply_sigma(f, form, apply_sigma(f, form, p, 3), 1);
    ExactElem b2 = f.mul(b, b);
    ExactElem b4 = f.mul(b2, b2);
    ExactElem b5 = f.mul(b4, b);
    ExactElem b8 = f.mul(b4, b4);
    ExactElem b9 = f.mul(b8, b);
    ExactElem num = f.add(b9, f.add(f.mul(f.from_int(2), b5),
                                    f.mul(f.from_int(5), b)));
    ExactElem den = f.add(b8, f.add(f.mul(f.from_int(6), b4), f.one()));
    ZeroTriple want{
        ZeroP1::finite(f.mul(num, f.inv(den))), ZeroP1::finite(b),
        ZeroP1::finite(f.mul(f.add(b, b), f.inv(f.add(b4, f.one()))))};
    CHECK(triple_eq(f, got, want));
  }
}

TEST_CASE("size48 orbit is independent of the parameter") {
  for (long long kv : {2LL, -3LL, 5LL, 7LL, -11LL}) {
    CAPTURE(kv);
    FiniteOrbitFamily fam = build_family("size48");
    CharZeroField f{fam.field};
    fam.k = f.from_int(kv);
    CHECK(verify_family(fam).found == 48);
  }
  // k = 0 degenerates the fibral quadratics at the seeds
  FiniteOrbitFamily fam = build_family("size48");
  CharZeroField f{fam.field};
  fam.k = f.zero();
  CHECK_THROWS_AS(verify_family(fam), DegenerateFiberError);
}

TEST_CASE("mod-p reductions of the 144 family") {
  struct Row {
    std::uint64_t p, k, alpha, beta;
  };
  const std::vector<Row> rows = {{11, 1, 4, 5},   {19, 9, 11, 4},
                                 {29, 1, 4, 18},  {29, 11, 3, 2},
                                 {31, 2, 2, 3},   {59, 9, 7, 21},
                                 {71, 34, 21, 59}, {79, 6, 27, 63}};
  FiniteOrbitFamily fam = build_family("size144");
  for (const Row& r : rows) {
    CAPTURE(r.p);
    ModpReduction red =
        reduce_family_mod_p(fam, r.p, {{"a", r.alpha}, {"b", r.beta}});
    CHECK(red.orbit_size == 144);
    PrimeFieldCtx ctx = fp_make(r.p);
    CHECK(twist_canonical(ctx, red.k) == r.k);
    FpField f{&ctx};
    CHECK(triple_eq(f, red.seeds[0], tr(f, (long long)r.alpha,
                                        (long long)r.beta, 1)));
  }
}

TEST_CASE("mod-p reductions of the 160 family") {
  struct Row {
    std::uint64_t p, k, beta, gamma;
  };
  const std::vector<Row> rows = {{19, 2, 6, 10},  {23, 5, 20, 19},
                                 {31, 6, 22, 8},  {41, 1, 25, 35},
                                 {41, 4, 31, 34}, {59, 8, 36, 38},
                                 {67, 27, 11, 49}, {73, 18, 9, 16}};
  FiniteOrbitFamily fam = build_family("size160");
  for (const Row& r : rows) {
    CAPTURE(r.p);
    ModpReduction red = reduce_family_mod_p(fam, r.p, {{"b", r.beta}});
    CHECK(red.orbit_size == 160);
    PrimeFieldCtx ctx = fp_make(r.p);
    CHECK(twist_canonical(ctx, red.k) == r.k);
    // second seed is (1, beta, gamma); pins the derived gamma = 2b/(b^4+1)
    REQUIRE_FALSE(red.seeds[1][2].is_inf);
    CHECK(red.seeds[1][2].v == r.gamma);
  }
}

TEST_CASE("288-family specializations") {
  struct Row {
    std::uint64_t p, k, alpha, beta, gamma, delta;
    bool exceptional;
    std::size_t size;
  };
  const std::vector<Row> rows = {
      {19, 9, 7, 2, 3, 17, true, 144},
      {23, 4, 10, 8, 9, 11, false, 288},
      {43, 2, 28, 13, 14, 20, true, 144},
      {47, 11, 3, 6, 11, 15, false, 288},
      {59, 23, 13, 33, 8, 11, false, 288},
      {61, 15, 5, 7, 18, 47, false, 288},
      {67, 31, 5, 30, 12, 27, true, 144},
      {71, 13, 10, 44, 16, 22, false, 288},
      {79, 35, 36, 8, 59, 61, false, 288},
      {79, 36, 12, 19, 51, 57, false, 288},
  };
  for (const Row& r : rows) {
    CAPTURE(r.p);
    CAPTURE(r.k);
    Spec288Report rep =
        verify_288_specialization(r.p, r.k, r.alpha, r.beta, r.gamma);
    CHECK(rep.delta == r.delta);
    CHECK(rep.exceptional == r.exceptional);
    CHECK(rep.expected == r.size);
    CHECK(rep.orbit_size == r.size);
    CHECK(rep.sigma_orbit_size == (r.exceptional ? 12u : 24u));
    CHECK(rep.stabilizer_size == 2);
  }
}

TEST_CASE("288 orbit coordinates stay in the sixteen derived values") {
  PrimeFieldCtx ctx = fp_make(47);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int(11)};
  Form222<FpField> form = wk_form(f, w);
  auto orb = orbit_closure(f, form, {tr(f, 3, 6, 11)},
                           standard_generators(false), 2048);
  REQUIRE(orb.size() == 288);
  std::size_t infs = 0;
  std::set<std::uint64_t> vals = finite_coordinate_values(orb, &infs);
  CHECK(infs == 0);
  // +-{alpha, beta, gamma, delta} and their inverses
  const std::set<std::uint64_t> expect{3,  6,  8,  11, 15, 16, 17, 22,
                                       25, 30, 31, 32, 36, 39, 41, 44};
  CHECK(vals == expect);
  // the twelve sheet-swap table representatives all lie in the orbit
  const long long reps[12][3] = {{3, 6, 11},   {22, 6, 11},  {22, 31, 11},
                                 {39, 31, 11}, {3, 32, 11},  {39, 32, 11},
                                 {3, 6, 15},   {30, 6, 15},  {30, 31, 15},
                                 {39, 31, 15}, {22, 6, 16},  {30, 6, 16}};
  for (const auto& r : reps)
    CHECK(orb.count(tr(f, r[0], r[1], r[2])) == 1);
}

TEST_CASE("reduced family orbit matches the finite-field decomposition") {
  FiniteOrbitFamily fam = build_family("size144");
  ModpReduction red = reduce_family_mod_p(fam, 11, {{"a", 4}, {"b", 5}});
  REQUIRE(red.k == 1);
  PrimeFieldCtx ctx = fp_make(11);
  FpField f{&ctx};
  auto d = orbit_decomposition(WkSurface<FpField>{f.from_int(1)}, ctx,
                               standard_generators());
  for (std::uint32_t i = 0; i < d.points.size(); ++i)
    if (triple_eq(f, d.points[i], red.seeds[0])) {
      CHECK(d.orbits[d.orbit_of[i]].size() == 144);
      return;
    }
  FAIL("reduced seed not found in the decomposition");
}

TEST_CASE("specialization acceptances and refusals") {
  CHECK_THROWS_AS(build_family("size100"), UnknownFamilyError);

  FiniteOrbitFamily f24 = build_family("size24");
  FiniteOrbitFamily f48 = build_family("size48");
  FiniteOrbitFamily f64 = build_family("size64");
  FiniteOrbitFamily f96 = build_family("size96");
  FiniteOrbitFamily f192 = build_family("size192");

  // quotient generators need an assigned root of the defining polynomial
  CHECK_THROWS_AS(reduce_family_mod_p(f64, 11, {}), NoRootModPError);
  CHECK_THROWS_AS(reduce_family_mod_p(f64, 11, {{"b", 3}}), NoRootModPError);
  // x^2 + 1 has no root mod 7 at all
  CHECK_THROWS_AS(reduce_family_mod_p(f48, 7, {{"i", 3}}), NoRootModPError);
  // function-field parameters refuse poles and collapsing roots of unity
  CHECK_THROWS_AS(reduce_family_mod_p(f24, 7, {{"t", 0}}),
                  BadSpecializationError);
  CHECK_THROWS_AS(reduce_family_mod_p(f24, 7, {{"t", 1}}),
                  BadSpecializationError);
  CHECK_THROWS_AS(reduce_family_mod_p(f192, 17, {{"i", 4}, {"t", 2}}),
                  BadSpecializationError);

  CHECK(reduce_family_mod_p(f24, 7, {{"t", 2}}).orbit_size == 24);
  CHECK(reduce_family_mod_p(f24, 11, {{"t", 3}}).k == 8);
  CHECK(reduce_family_mod_p(f64, 11, {{"b", 5}}).k == 2);
  CHECK(reduce_family_mod_p(f96, 17, {{"eta", 2}}).k == 9);
  CHECK(reduce_family_mod_p(f192, 17, {{"i", 4}, {"t", 3}}).orbit_size == 192);
  CHECK(reduce_family_mod_p(f192, 41, {{"i", 9}, {"t", 2}}).k == 3);
}

TEST_CASE("cautionary checks") {
  CautionaryReport rep = cautionary_checks();
  CHECK(rep.resultant == (BigInt(1) << 80) * 53 * 53);
  CHECK(rep.w8_f53_orbit == 256);
  CHECK(rep.w2_f23_orbit == 256);
  CHECK(rep.w13_f71_orbit == 384);
  CHECK(rep.w13_suborbits == std::vector<std::size_t>{48, 48, 48, 48, 96, 96});
  CHECK(rep.w13_sigma_spans);
}

TEST_CASE("sheet-swap images on the inversion-invariant 384 orbit") {
  PrimeFieldCtx ctx = fp_make(71);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int(13)};
  Form222<FpField> form = wk_form(f, w);
  struct Row {
    long long p[3], s1[3], s2[3], s3[3];
  };
  // alpha=22 beta=23 gamma=9 delta=44
  const std::vector<Row> rows = {
      {{22, 22, -23}, {8, 22, -23}, {22, 8, -23}, {22, 22, -9}},
      {{22, 22, -9}, {34, 22, -9}, {22, 34, -9}, {22, 22, -23}},
      {{23, 23, 9}, {29, 23, 9}, {23, 29, 9}, {23, 23, 44}},
      {{23, 23, 44}, {70, 23, 44}, {23, 70, 44}, {23, 23, 9}},
      {{22, -23, 8}, {37, -23, 8}, {22, 29, 8}, {22, -23, 22}},
      {{23, -44, 1}, {34, -44, 1}, {23, 50, 1}, {23, -44, -23}},
  };
  for (const Row& r : rows) {
    FpTriple p = tr(f, r.p[0], r.p[1], r.p[2]);
    CAPTURE(r.p[0]);
    CAPTURE(r.p[1]);
    CHECK(triple_eq(f, apply_sigma(f, form, p, 1),
                    tr(f, r.s1[0], r.s1[1], r.s1[2])));
    CHECK(triple_eq(f, apply_sigma(f, form, p, 2),
                    tr(f, r.s2[0], r.s2[1], r.s2[2])));
    CHECK(triple_eq(f, apply_sigma(f, form, p, 3),
                    tr(f, r.s3[0], r.s3[1], r.s3[2])));
  }
}

TEST_CASE("the 256 orbit of W_8 over F_53 closes over fourteen values") {
  PrimeFieldCtx ctx = fp_make(53);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int(8)};
  Form222<FpField> form = wk_form(f, w);
  CHECK(triple_eq(f, apply_sigma(f, form, tr(f, 16, 16, 16), 1),
                  tr(f, 34, 16, 16)));
  auto orb = orbit_closure(f, form, {tr(f, 16, 16, 16)},
                           standard_generators(false), 2048);
  REQUIRE(orb.size() == 256);
  std::size_t infs = 0;
  std::set<std::uint64_t> vals = finite_coordinate_values(orb, &infs);
  CHECK(infs == 0);
  const std::set<std::uint64_t> expect{1,  5,  10, 14, 16, 19, 21,
                                       32, 34, 37, 39, 43, 48, 52};
  CHECK(vals == expect);
}
