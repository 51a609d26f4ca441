#include "mk3/char0.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <utility>

#include "mk3/poly.hpp"

namespace mk3 {

namespace {

ElemVec int_poly(const FieldPtr& base, std::initializer_list<long long> coeffs) {
  ElemVec v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(base->from_int(c));
  return v;
}

ZeroP1 fin(ExactElem v) { return ZeroP1::finite(std::move(v)); }

ZeroTriple pt(ExactElem x, ExactElem y, ExactElem z) {
  return {fin(std::move(x)), fin(std::move(y)), fin(std::move(z))};
}

std::string zero_point_format(const CharZeroField& f, const ZeroTriple& t) {
  auto coord = [&](const ZeroP1& a) {
    return a.is_inf ? std::string("inf") : f.format(a.v);
  };
  return "(" + coord(t[0]) + "," + coord(t[1]) + "," + coord(t[2]) + ")";
}

FiniteOrbitFamily family_size1() {
  FiniteOrbitFamily fam;
  fam.name = "size1";
  fam.field = ExactField::rationals();
  CharZeroField f{fam.field};
  fam.k = f.one();
  fam.seeds = {pt(f.zero(), f.zero(), f.zero())};
  fam.expected_size = 1;
  fam.circ_suborbit_sizes = {1};
  return fam;
}

FiniteOrbitFamily family_size3() {
  FiniteOrbitFamily fam;
  fam.name = "size3";
  fam.field = ExactField::rationals();
  CharZeroField f{fam.field};
  fam.k = f.one();
  fam.seeds = {{fin(f.zero()), ZeroP1::infinity(f), ZeroP1::infinity(f)}};
  fam.expected_size = 3;
  fam.circ_suborbit_sizes = {3};
  return fam;
}

FiniteOrbitFamily family_size4() {
  FiniteOrbitFamily fam;
  fam.name = "size4";
  fam.field = ExactField::rationals();
  CharZeroField f{fam.field};
  fam.k = f.from_int(4);
  ExactElem m1 = f.from_int(-1);
  fam.seeds = {pt(m1, m1, m1)};
  fam.expected_size = 4;
  fam.circ_suborbit_sizes = {4};
  return fam;
}

FiniteOrbitFamily family_size24() {
  FiniteOrbitFamily fam;
  fam.name = "size24";
  fam.field = ExactField::functions(ExactField::rationals(), "t");
  CharZeroField f{fam.field};
  ExactElem t = fam.field->gen();
  ExactElem tinv = f.inv(t);
  fam.k = f.neg(f.mul(f.from_int(2), f.add(t, tinv)));
  fam.seeds = {pt(t, f.one(), f.one()), pt(tinv, f.one(), f.one())};
  fam.expected_size = 24;
  fam.circ_suborbit_sizes = {12, 12};
  fam.unit_specialization_bound = 4;
  return fam;
}

FiniteOrbitFamily family_size48() {
  FiniteOrbitFamily fam;
  fam.name = "size48";
  auto Q = ExactField::rationals();
  fam.field = ExactField::quotient(Q, int_poly(Q, {1, 0, 1}), "i");
  CharZeroField f{fam.field};
  ExactElem i = fam.field->gen();
  // the orbit is independent of k; any fixed value works
  fam.k = f.one();
  fam.seeds = {pt(f.one(), i, f.zero()),
               {fin(f.one()), fin(i), ZeroP1::infinity(f)}};
  fam.expected_size = 48;
  fam.circ_suborbit_sizes = {24, 24};
  return fam;
}

FiniteOrbitFamily family_size64() {
  FiniteOrbitFamily fam;
  fam.name = "size64";
  auto Q = ExactField::rationals();
  fam.field = ExactField::quotient(Q, int_poly(Q, {-1, 1, 1, 1}), "b");
  CharZeroField f{fam.field};
  ExactElem b = fam.field->gen();
  ExactElem binv = f.inv(b);
  ExactElem s = f.add(b, binv);
  fam.k = f.neg(f.mul(s, s));
  ExactElem one = f.one();
  fam.seeds = {pt(b, b, b), pt(b, b, one), pt(binv, binv, one),
               pt(b, binv, binv), pt(b, binv, one)};
  fam.expected_size = 64;
  fam.circ_suborbit_sizes = {4, 12, 12, 12, 24};
  return fam;
}

FiniteOrbitFamily family_size96() {
  FiniteOrbitFamily fam;
  fam.name = "size96";
  auto Q = ExactField::rationals();
  fam.field = ExactField::quotient(Q, int_poly(Q, {1, 0, 0, 0, 1}), "eta");
  CharZeroField f{fam.field};
  ExactElem e = fam.field->gen();
  ExactElem e2 = f.mul(e, e);
  ExactElem e3 = f.mul(e2, e);
  ExactElem e5 = f.mul(e3, e2);
  ExactElem e6 = f.mul(e3, e3);
  ExactElem e7 = f.mul(e6, e);
  fam.k = f.neg(f.mul(f.from_int(2), e2));
  // At z = inf the surface equation degenerates to x^2 y^2 + 1 = 0, so the
  // finite coordinates of an infinite point must satisfy (xy)^2 = -1.
  fam.seeds = {pt(e, e3, f.zero()),
               pt(e, e3, e6),
               pt(e, e2, e5),
               {fin(e), fin(e5), ZeroP1::infinity(f)},
               pt(e2, e3, e7),
               {fin(e3), fin(e3), ZeroP1::infinity(f)}};
  fam.expected_size = 96;
  fam.circ_suborbit_sizes = {24, 24, 12, 12, 12, 12};
  return fam;
}

FiniteOrbitFamily family_size144() {
  FiniteOrbitFamily fam;
  fam.name = "size144";
  auto Q = ExactField::rationals();
  auto B = ExactField::quotient(Q, int_poly(Q, {1, 2, -2, 2, 1}), "b");
  // a^2 = -(b^2+3b+1)/b; the quartic relation a^4+4a^2-1 = 0 follows from
  // b's minimal polynomial
  ExactElem bb = B->gen();
  ExactElem c0 = B->div(
      B->add(B->mul(bb, bb), B->add(B->mul(B->from_int(3), bb), B->one())), bb);
  fam.field = ExactField::quotient(B, ElemVec{c0, B->zero(), B->one()}, "a");
  CharZeroField f{fam.field};
  ExactElem a = fam.field->gen();
  ExactElem b = fam.field->named_gen("b");
  ExactElem ainv = f.inv(a);
  ExactElem binv = f.inv(b);
  ExactElem nb = f.neg(b);
  ExactElem nbinv = f.neg(binv);
  ExactElem one = f.one();
  fam.k = f.mul(f.from_int(4), ainv);
  fam.seeds = {pt(a, b, one),       pt(ainv, b, one), pt(a, binv, one),
               pt(ainv, binv, one), pt(a, b, nb),     pt(ainv, binv, nb),
               pt(a, binv, nbinv)};
  fam.expected_size = 144;
  fam.circ_suborbit_sizes = {24, 24, 24, 24, 12, 24, 12};
  return fam;
}

FiniteOrbitFamily family_size160() {
  FiniteOrbitFamily fam;
  fam.name = "size160";
  auto Q = ExactField::rationals();
  fam.field =
      ExactField::quotient(Q, int_poly(Q, {1, -4, -4, -4, 2, 0, 0, 0, 1}), "b");
  CharZeroField f{fam.field};
  ExactElem b = fam.field->gen();
  ExactElem b4 = f.mul(f.mul(b, b), f.mul(b, b));
  ExactElem g = f.mul(f.add(b, b), f.inv(f.add(b4, f.one())));
  fam.k = f.neg(f.mul(f.add(f.from_int(3), b4), f.inv(b)));
  ExactElem binv = f.inv(b);
  ExactElem ginv = f.inv(g);
  ExactElem one = f.one();
  fam.seeds = {pt(b, b, b),       pt(one, b, g),       pt(binv, binv, b),
               pt(one, binv, g),  pt(b, b, g),         pt(one, b, ginv),
               pt(binv, binv, g), pt(one, binv, ginv), pt(b, binv, ginv)};
  fam.expected_size = 160;
  fam.circ_suborbit_sizes = {4, 24, 12, 24, 12, 24, 12, 24, 24};
  return fam;
}

FiniteOrbitFamily family_size192() {
  FiniteOrbitFamily fam;
  fam.name = "size192";
  auto Q = ExactField::rationals();
  auto Qi = ExactField::quotient(Q, int_poly(Q, {1, 0, 1}), "i");
  fam.field = ExactField::functions(Qi, "t");
  CharZeroField f{fam.field};
  ExactElem i = fam.field->named_gen("i");
  ExactElem t = fam.field->gen();
  ExactElem tinv = f.inv(t);
  fam.k = f.mul(i, f.sub(f.mul(t, t), f.mul(tinv, tinv)));
  ExactElem it = f.mul(i, t);
  ExactElem nit = f.neg(it);
  ExactElem itinv = f.mul(i, tinv);
  ExactElem one = f.one();
  fam.seeds = {pt(t, it, f.zero()),
               pt(t, nit, one),
               pt(t, itinv, one),
               {fin(t), fin(itinv), ZeroP1::infinity(f)},
               pt(tinv, nit, one),
               {fin(tinv), fin(it), ZeroP1::infinity(f)},
               pt(tinv, itinv, f.zero()),
               pt(tinv, itinv, one)};
  fam.expected_size = 192;
  fam.circ_suborbit_sizes = {24, 24, 24, 24, 24, 24, 24, 24};
  fam.unit_specialization_bound = 8;
  return fam;
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "size1",  "size3",  "size4",   "size24",  "size48",
      "size64", "size96", "size144", "size160", "size192"};
  return names;
}

FiniteOrbitFamily build_family(const std::string& name) {
  if (name == "size1") return family_size1();
  if (name == "size3") return family_size3();
  if (name == "size4") return family_size4();
  if (name == "size24") return family_size24();
  if (name == "size48") return family_size48();
  if (name == "size64") return family_size64();
  if (name == "size96") return family_size96();
  if (name == "size144") return family_size144();
  if (name == "size160") return family_size160();
  if (name == "size192") return family_size192();
  throw UnknownFamilyError(name);
}

FamilyReport verify_family(const FiniteOrbitFamily& fam) {
  CharZeroField f{fam.field};
  WkSurface<CharZeroField> w{fam.k};
  Form222<CharZeroField> form = wk_form(f, w);
  for (const ZeroTriple& s : fam.seeds)
    if (!contains(f, form, s))
      throw NotOnSurfaceError("family " + fam.name + ": seed " +
                              zero_point_format(f, s) +
                              " does not satisfy the surface equation");

  const std::size_t cap = 4 * fam.expected_size + 256;
  TripleSet<CharZeroField> full =
      orbit_closure(f, form, fam.seeds, standard_generators(false), cap);
  if (full.size() != fam.expected_size)
    throw SizeMismatchError("family " + fam.name + " orbit", full.size(),
                            fam.expected_size);

  FamilyReport rep;
  rep.name = fam.name;
  rep.expected = fam.expected_size;
  rep.found = full.size();

  auto circ = circ_generators();
  TripleSet<CharZeroField> covered{TripleLess<CharZeroField>{&f}};
  for (const ZeroTriple& s : fam.seeds) {
    TripleSet<CharZeroField> sub = orbit_closure(f, form, {s}, circ, cap);
    rep.circ_sizes.push_back(sub.size());
    covered.insert(sub.begin(), sub.end());
  }
  std::size_t sum =
      std::accumulate(rep.circ_sizes.begin(), rep.circ_sizes.end(), std::size_t{0});
  if (sum != full.size() || covered.size() != full.size())
    throw SizeMismatchError(
        "family " + fam.name + ": seed suborbits do not partition the orbit",
        sum, full.size());
  if (!fam.circ_suborbit_sizes.empty() &&
      rep.circ_sizes != fam.circ_suborbit_sizes)
    throw SizeMismatchError("family " + fam.name + ": suborbit sizes " +
                            format_sizes_csv(rep.circ_sizes) +
                            " differ from the expected " +
                            format_sizes_csv(fam.circ_suborbit_sizes));

  auto sig = sigma_generators();
  TripleSet<CharZeroField> seen{TripleLess<CharZeroField>{&f}};
  for (const ZeroTriple& q : full) {
    if (seen.count(q)) continue;
    TripleSet<CharZeroField> sub = orbit_closure(f, form, {q}, sig, cap);
    rep.sigma_sizes.push_back(sub.size());
    seen.insert(sub.begin(), sub.end());
  }
  std::sort(rep.sigma_sizes.begin(), rep.sigma_sizes.end());
  return rep;
}

namespace {

using Assignments = std::map<std::string, std::uint64_t>;

std::uint64_t reduce_bigint(const BigInt& n, const PrimeFieldCtx& ctx) {
  BigInt r = n % BigInt(ctx.p);
  if (r < 0) r += BigInt(ctx.p);
  return r.convert_to<std::uint64_t>();
}

std::uint64_t reduce_elem(const FieldPtr& field, const ExactElem& e,
                          const FpField& fp, const Assignments& asg);

// Horner evaluation of a polynomial over `base` at a residue.
std::uint64_t reduce_poly_at(const FieldPtr& base, const ElemVec& poly,
                             std::uint64_t at, const FpField& fp,
                             const Assignments& asg) {
  std::uint64_t acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it)
    acc = fp.add(fp.mul(acc, at), reduce_elem(base, *it, fp, asg));
  return acc;
}

std::uint64_t reduce_elem(const FieldPtr& field, const ExactElem& e,
                          const FpField& fp, const Assignments& asg) {
  switch (field->kind()) {
    case ExactField::Kind::Rationals: {
      const BigRat& r = std::get<BigRat>(e.rep);
      std::uint64_t den =
          reduce_bigint(BigInt(boost::multiprecision::denominator(r)), *fp.ctx);
      if (den == 0)
        throw BadSpecializationError("denominator divisible by " +
                                     std::to_string(fp.ctx->p));
      std::uint64_t num =
          reduce_bigint(BigInt(boost::multiprecision::numerator(r)), *fp.ctx);
      return fp.mul(num, fp.inv(den));
    }
    case ExactField::Kind::Quotient:
      return reduce_poly_at(field->base(), std::get<ElemVec>(e.rep),
                            asg.at(field->gen_name()), fp, asg);
    case ExactField::Kind::FunctionField: {
      const RatFunRep& r = std::get<RatFunRep>(e.rep);
      std::uint64_t at = asg.at(field->gen_name());
      std::uint64_t den = reduce_poly_at(field->base(), r.den, at, fp, asg);
      if (den == 0)
        throw BadSpecializationError("specialization " + field->gen_name() +
                                     " = " + std::to_string(at) +
                                     " hits a pole");
      std::uint64_t num = reduce_poly_at(field->base(), r.num, at, fp, asg);
      return fp.mul(num, fp.inv(den));
    }
  }
  throw Mk3Error("unreachable field kind");
}

// Checks that every tower generator is assigned and each assigned value is
// a root of its defining polynomial; function-field variables must avoid 0
// and the family's collapsing roots of unity.
void validate_assignments(const FiniteOrbitFamily& fam, const FpField& fp,
                          const Assignments& asg) {
  std::vector<FieldPtr> chain;
  for (FieldPtr node = fam.field; node; node = node->base())
    chain.push_back(node);
  std::reverse(chain.begin(), chain.end());
  for (const FieldPtr& node : chain) {
    if (node->kind() == ExactField::Kind::Rationals) continue;
    auto it = asg.find(node->gen_name());
    if (it == asg.end())
      throw NoRootModPError("family " + fam.name + ": no assignment for " +
                            node->gen_name());
    std::uint64_t v = it->second;
    if (node->kind() == ExactField::Kind::Quotient) {
      std::uint64_t at = reduce_poly_at(node->base(), node->modulus(), v, fp, asg);
      if (at != 0)
        throw NoRootModPError("family " + fam.name + ": " + node->gen_name() +
                              " = " + std::to_string(v) +
                              " is not a root of the defining polynomial mod " +
                              std::to_string(fp.ctx->p));
    } else {
      if (v == 0)
        throw BadSpecializationError("family " + fam.name + ": " +
                                     node->gen_name() + " = 0 is a pole");
      if (fam.unit_specialization_bound != 0 &&
          fp.ctx->pow(v, fam.unit_specialization_bound) == 1)
        throw BadSpecializationError(
            "family " + fam.name + ": " + node->gen_name() + " = " +
            std::to_string(v) + " satisfies " + node->gen_name() + "^" +
            std::to_string(fam.unit_specialization_bound) +
            " = 1 and collapses the family");
    }
  }
}

}  // namespace

ModpReduction reduce_family_mod_p(const FiniteOrbitFamily& fam, std::uint64_t p,
                                  const Assignments& assignments) {
  PrimeFieldCtx ctx(p);
  FpField fp{&ctx};
  Assignments asg;
  for (const auto& [name, value] : assignments) asg[name] = value % p;
  validate_assignments(fam, fp, asg);

  ModpReduction out;
  out.p = p;
  out.k = reduce_elem(fam.field, fam.k, fp, asg);
  for (const ZeroTriple& s : fam.seeds) {
    FpTriple t;
    for (int i = 0; i < 3; ++i)
      t[i] = s[i].is_inf
                 ? FpP1::infinity(fp)
                 : FpP1::finite(reduce_elem(fam.field, s[i].v, fp, asg));
    out.seeds.push_back(t);
  }

  WkSurface<FpField> w{out.k};
  Form222<FpField> form = wk_form(fp, w);
  TripleSet<FpField> closure =
      orbit_closure(fp, form, out.seeds, standard_generators(false),
                    4 * fam.expected_size + 256);
  out.orbit_size = closure.size();
  if (out.orbit_size != fam.expected_size)
    throw SizeMismatchError("family " + fam.name + " mod " + std::to_string(p),
                            out.orbit_size, fam.expected_size);
  return out;
}

namespace {

const CircGen kLambda{{0, 2, 1}, {1, -1, -1}};  // (x,y,z) -> (x,-z,-y)

ZPoly int_zpoly(std::initializer_list<long long> coeffs) {
  ZPoly v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(BigInt(c));
  return v;
}

}  // namespace

Spec288Report verify_288_specialization(std::uint64_t p, std::uint64_t k,
                                        std::uint64_t alpha, std::uint64_t beta,
                                        std::uint64_t gamma) {
  PrimeFieldCtx ctx(p);
  FpField fp{&ctx};
  const std::uint64_t a = alpha % p, b = beta % p, g = gamma % p, kv = k % p;
  if (a == 0 || b == 0 || g == 0)
    throw RelationFailureError("coordinates must be nonzero mod " +
                               std::to_string(p));
  auto M = [&](std::uint64_t x, std::uint64_t y) { return fp.mul(x, y); };
  const std::uint64_t a2 = M(a, a), b2 = M(b, b), g2 = M(g, g), g3 = M(g2, g);

  // a^2 b - a^2 g + a b^2 g^2 - a + b^2 g - b g^2
  std::uint64_t r1 = fp.add(fp.sub(M(a2, b), M(a2, g)),
                            fp.add(fp.sub(M(a, M(b2, g2)), a),
                                   fp.sub(M(b2, g), M(b, g2))));
  if (r1 != 0)
    throw RelationFailureError("first curve relation fails: value " +
                               std::to_string(r1));
  // a^2 g^2 - a b^2 g^3 + a b + b g^3
  std::uint64_t r2 = fp.add(fp.sub(M(a2, g2), M(a, M(b2, g3))),
                            fp.add(M(a, b), M(b, g3)));
  if (r2 != 0)
    throw RelationFailureError("second curve relation fails: value " +
                               std::to_string(r2));
  // b^3 g^3 - b^2 + b g - g^2
  std::uint64_t r3 =
      fp.add(fp.sub(M(M(b2, b), g3), b2), fp.sub(M(b, g), g2));
  if (r3 != 0)
    throw RelationFailureError("third curve relation fails: value " +
                               std::to_string(r3));

  std::uint64_t dden = M(g, fp.add(M(a2, b2), 1));
  if (dden == 0)
    throw RelationFailureError("delta formula degenerates: g(a^2 b^2 + 1) = 0");
  const std::uint64_t delta = M(fp.add(a2, b2), fp.inv(dden));
  std::uint64_t knum = fp.add(fp.add(a2, b2), fp.add(g2, M(a2, M(b2, g2))));
  std::uint64_t kcomp = fp.neg(M(knum, fp.inv(M(a, M(b, g)))));
  if (kcomp != kv)
    throw RelationFailureError("k formula gives " + std::to_string(kcomp) +
                               ", not " + std::to_string(kv));

  const std::uint64_t a4 = M(a2, a2), b4 = M(b2, b2), g4 = M(g2, g2);
  const std::uint64_t three = fp.from_int(3);
  Spec288Report rep;
  rep.p = p;
  rep.k = kv;
  rep.alpha = a;
  rep.beta = b;
  rep.gamma = g;
  rep.delta = delta;
  rep.exceptional = fp.add(M(three, a4), 1) == 0 || fp.add(b4, three) == 0 ||
                    fp.add(g4, three) == 0;
  rep.expected = rep.exceptional ? 144 : 288;

  WkSurface<FpField> w{kv};
  Form222<FpField> form = wk_form(fp, w);
  FpTriple P{FpP1::finite(a), FpP1::finite(b), FpP1::finite(g)};
  if (!contains(fp, form, P))
    throw RelationFailureError("(a,b,g) is not on W_k");

  TripleSet<FpField> full =
      orbit_closure(fp, form, {P}, standard_generators(false), 2048);
  rep.orbit_size = full.size();
  if (rep.orbit_size != rep.expected)
    throw SizeMismatchError("orbit of (a,b,g) in W_k(F_" + std::to_string(p) +
                                ")",
                            rep.orbit_size, rep.expected);

  TripleSet<FpField> swap_orbit =
      orbit_closure(fp, form, {P}, sigma_generators(), 2048);
  rep.sigma_orbit_size = swap_orbit.size();

  bool id_in = false, lambda_in = false;
  for (const CircGen& c : all_circ_elements()) {
    bool stab = true;
    for (const FpTriple& q : swap_orbit)
      if (!swap_orbit.count(apply_circ(fp, c, q))) {
        stab = false;
        break;
      }
    if (!stab) continue;
    ++rep.stabilizer_size;
    if (circ_eq(c, circ_identity())) id_in = true;
    if (circ_eq(c, kLambda)) lambda_in = true;
  }
  if (!rep.exceptional) {
    if (rep.sigma_orbit_size != 24)
      throw SizeMismatchError("sheet-swap suborbit of (a,b,g)",
                              rep.sigma_orbit_size, 24);
    if (rep.stabilizer_size != 2 || !id_in || !lambda_in)
      throw SizeMismatchError("stabilizer of the sheet-swap suborbit",
                              rep.stabilizer_size, 2);
  }

  // Sheet-swap action on the twelve representatives; negative target = the
  // (x,-z,-y) companion of that representative.
  const std::uint64_t ainv = fp.inv(a), binv = fp.inv(b), ginv = fp.inv(g);
  const std::uint64_t dinv = fp.inv(delta);
  const std::uint64_t nainv = fp.neg(ainv), nbinv = fp.neg(binv);
  const std::uint64_t nd = fp.neg(delta);
  auto fpt = [](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    return FpTriple{FpP1::finite(x), FpP1::finite(y), FpP1::finite(z)};
  };
  const FpTriple reps[12] = {
      fpt(a, b, g),          fpt(dinv, b, g),        fpt(dinv, nainv, g),
      fpt(nbinv, nainv, g),  fpt(a, nd, g),          fpt(nbinv, nd, g),
      fpt(a, b, delta),      fpt(ginv, b, delta),    fpt(ginv, nainv, delta),
      fpt(nbinv, nainv, delta), fpt(dinv, b, ainv),  fpt(ginv, b, ainv)};
  static const int targets[12][3] = {
      {2, 5, 7},    {1, 3, 11},  {4, 2, -11}, {3, 6, 10},
      {6, 1, -7},   {5, 4, -10}, {8, -5, 1},  {7, 9, 12},
      {10, 8, -12}, {9, -6, 4},  {12, -3, 2}, {11, -9, 8}};
  for (int row = 0; row < 12; ++row) {
    for (int axis = 1; axis <= 3; ++axis) {
      FpTriple image = apply_sigma(fp, form, reps[row], axis);
      int t = targets[row][axis - 1];
      FpTriple expect = reps[(t < 0 ? -t : t) - 1];
      if (t < 0) expect = apply_circ(fp, kLambda, expect);
      if (!triple_eq(fp, image, expect))
        throw RelationFailureError(
            "sheet-swap table: swap " + std::to_string(axis) + " of P" +
            std::to_string(row + 1) + " gives " + fp_point_format(image) +
            ", expected " + fp_point_format(expect));
    }
  }
  return rep;
}

CautionaryReport cautionary_checks() {
  CautionaryReport rep;

  // Minimal polynomial pair of a sheet-swap coincidence that exists mod 53
  // but over no larger prime: their resultant has no odd factor besides 53.
  const ZPoly f18 = int_zpoly(
      {1, 0, 9, 0, -8, 0, 44, 0, -38, 0, 62, 0, -16, 0, 12, 0, -3, 0, 1});
  const ZPoly f12 = int_zpoly({1, 0, 2, 0, 15, 0, 12, 0, 15, 0, 2, 0, 1});
  rep.resultant = poly_resultant(f18, f12);
  const BigInt expect_res = (BigInt(1) << 80) * 53 * 53;
  if (rep.resultant != expect_res)
    throw CheckFailureError("elimination resultant: got " +
                            rep.resultant.str() + ", expected " +
                            expect_res.str());

  auto closure_size = [](std::uint64_t p, std::uint64_t k, std::uint64_t x,
                         std::uint64_t y, std::uint64_t z) {
    PrimeFieldCtx ctx(p);
    FpField fp{&ctx};
    WkSurface<FpField> w{k};
    Form222<FpField> form = wk_form(fp, w);
    FpTriple P{FpP1::finite(x), FpP1::finite(y), FpP1::finite(z)};
    return orbit_closure(fp, form, {P}, standard_generators(false), 4096)
        .size();
  };
  rep.w8_f53_orbit = closure_size(53, 8, 16, 16, 16);
  if (rep.w8_f53_orbit != 256)
    throw CheckFailureError("orbit of (16,16,16) in W_8(F_53): size " +
                            std::to_string(rep.w8_f53_orbit) +
                            ", expected 256");
  rep.w2_f23_orbit = closure_size(23, 2, 6, 11, 18);
  if (rep.w2_f23_orbit != 256)
    throw CheckFailureError("orbit of (6,11,18) in W_2(F_23): size " +
                            std::to_string(rep.w2_f23_orbit) +
                            ", expected 256");

  PrimeFieldCtx ctx(71);
  FpField fp{&ctx};
  WkSurface<FpField> w{13};
  Form222<FpField> form = wk_form(fp, w);
  auto fpt = [&](long long x, long long y, long long z) {
    return FpTriple{FpP1::finite(fp.from_int(x)), FpP1::finite(fp.from_int(y)),
                    FpP1::finite(fp.from_int(z))};
  };
  TripleSet<FpField> full = orbit_closure(
      fp, form, {fpt(22, 22, -23)}, standard_generators(false), 4096);
  rep.w13_f71_orbit = full.size();
  if (rep.w13_f71_orbit != 384)
    throw CheckFailureError("orbit of (22,22,-23) in W_13(F_71): size " +
                            std::to_string(rep.w13_f71_orbit) +
                            ", expected 384");

  auto hat = circ_delta_generators();
  TripleSet<FpField> closed = orbit_closure(
      fp, form, std::vector<FpTriple>(full.begin(), full.end()), hat, 4096);
  if (closed.size() != full.size())
    throw CheckFailureError(
        "the 384-point orbit is not inversion-invariant: grows to " +
        std::to_string(closed.size()));

  // alpha = 22, beta = 23, gamma = 9, delta = 44
  const FpTriple hat_reps[6] = {fpt(22, 22, -23), fpt(22, 22, -9),
                                fpt(23, 23, 9),   fpt(23, 23, 44),
                                fpt(22, -23, 8),  fpt(23, -44, 1)};
  TripleSet<FpField> covered{TripleLess<FpField>{&fp}};
  for (const FpTriple& r : hat_reps) {
    TripleSet<FpField> sub = orbit_closure(fp, form, {r}, hat, 4096);
    rep.w13_suborbits.push_back(sub.size());
    covered.insert(sub.begin(), sub.end());
  }
  const std::vector<std::size_t> expect_sub{48, 48, 48, 48, 96, 96};
  std::size_t sub_sum = std::accumulate(rep.w13_suborbits.begin(),
                                        rep.w13_suborbits.end(), std::size_t{0});
  if (rep.w13_suborbits != expect_sub || covered.size() != full.size() ||
      sub_sum != full.size())
    throw CheckFailureError(
        "suborbit structure of the 384-point orbit: sizes " +
        format_sizes_csv(rep.w13_suborbits) + " covering " +
        std::to_string(covered.size()) + " points");

  TripleSet<FpField> swaps = orbit_closure(fp, form, {fpt(22, 22, -23)},
                                           sigma_generators(), 4096);
  rep.w13_sigma_spans = swaps.size() == full.size();
  if (!rep.w13_sigma_spans)
    throw CheckFailureError(
        "sheet swaps alone reach only " + std::to_string(swaps.size()) +
        " of the 384 points");
  return rep;
}

}  // namespace mk3
