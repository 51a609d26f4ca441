#include "mk3/exact_field.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace mk3 {

namespace {

// ---- polynomial helpers over an arbitrary base field -----------------------
// Coefficient vectors are trimmed; index = degree.

void ptrim(const ExactField& F, ElemVec& f) {
  while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

int pdeg(const ElemVec& f) { return static_cast<int>(f.size()) - 1; }

ElemVec padd(const ExactField& F, const ElemVec& a, const ElemVec& b) {
  ElemVec r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  ptrim(F, r);
  return r;
}

ElemVec pneg(const ExactField& F, const ElemVec& a) {
  ElemVec r = a;
  for (auto& c : r) c = F.neg(c);
  return r;
}

ElemVec psub(const ExactField& F, const ElemVec& a, const ElemVec& b) {
  return padd(F, a, pneg(F, b));
}

ElemVec pmul(const ExactField& F, const ElemVec& a, const ElemVec& b) {
  if (a.empty() || b.empty()) return {};
  ElemVec r(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  ptrim(F, r);
  return r;
}

ElemVec pscale(const ExactField& F, const ElemVec& a, const ExactElem& c) {
  if (F.is_zero(c)) return {};
  ElemVec r = a;
  for (auto& x : r) x = F.mul(x, c);
  return r;
}

// Division with remainder; b nonzero. Quotient into *quot when non-null.
ElemVec pmod(const ExactField& F, ElemVec a, const ElemVec& b, ElemVec* quot = nullptr) {
  if (b.empty()) throw DivisionByZeroError();
  ExactElem lcs = F.inv(b.back());
  ElemVec q;
  if (quot && pdeg(a) >= pdeg(b)) q.assign(a.size() - b.size() + 1, F.zero());
  while (pdeg(a) >= pdeg(b)) {
    int shift = pdeg(a) - pdeg(b);
    ExactElem f = F.mul(a.back(), lcs);
    if (quot) q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t k = shift + i;
      a[k] = F.sub(a[k], F.mul(f, b[i]));
    }
    ptrim(F, a);
  }
  if (quot) {
    ptrim(F, q);
    *quot = std::move(q);
  }
  return a;
}

ElemVec pmonic(const ExactField& F, ElemVec a) {
  if (a.empty()) return a;
  ExactElem s = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, s);
  return a;
}

ElemVec pgcd_monic(const ExactField& F, ElemVec a, ElemVec b) {
  ptrim(F, a);
  ptrim(F, b);
  while (!b.empty()) {
    ElemVec r = pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(F, std::move(a));
}

int pcmp(const ExactField& F, const ElemVec& a, const ElemVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = F.cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool elem_atomic(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '+' || c == '*' || c == ' ' || (c == '-' && i > 0)) return false;
  }
  return true;
}

std::string pformat(const ExactField& F, const ElemVec& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string out;
  for (int d = pdeg(f); d >= 0; --d) {
    if (F.is_zero(f[d])) continue;
    std::string cs = F.format(f[d]);
    bool neg = cs.size() > 1 && cs[0] == '-' && elem_atomic(cs);
    if (neg) cs = cs.substr(1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    bool is_one = cs == "1";
    if (!elem_atomic(cs)) cs = "(" + cs + ")";
    if (d == 0) {
      out += cs;
    } else {
      if (!is_one) out += cs + "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---- field node construction ----------------------------------------------

FieldPtr ExactField::rationals() {
  static FieldPtr q = [] {
    auto f = new ExactField();
    f->kind_ = Kind::Rationals;
    return FieldPtr(f);
  }();
  return q;
}

namespace {

// Rational-root test over Q: any rational root gives a linear factor, which
// makes the quotient construction fail fast instead of lazily.
void rational_root_check(const ElemVec& modulus, const std::string& gen) {
  std::vector<BigRat> f;
  for (const auto& c : modulus) f.push_back(std::get<BigRat>(c.rep));
  BigInt lcm = 1;
  for (const auto& r : f) {
    BigInt d = boost::multiprecision::denominator(r);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> zi;
  for (const auto& r : f) zi.push_back(BigInt(r * lcm));
  while (!zi.empty() && zi.back() == 0) zi.pop_back();
  if (zi.size() < 2) return;
  if (zi.front() == 0) throw ReducibleModulusError(gen);
  BigInt a0 = abs(zi.front()), an = abs(zi.back());
  if (a0 > 1000000 || an > 1000000) return;  // divisor search not worthwhile
  auto divisors = [](long long n) {
    std::vector<long long> d;
    for (long long i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
      }
    return d;
  };
  auto eval = [&](const BigRat& x) {
    BigRat v = 0;
    for (int i = static_cast<int>(zi.size()) - 1; i >= 0; --i) v = v * x + BigRat(zi[i]);
    return v;
  };
  for (long long num : divisors(a0.convert_to<long long>()))
    for (long long den : divisors(an.convert_to<long long>()))
      for (int sgn : {1, -1}) {
        BigRat root(sgn * num, den);
        if (eval(root) == 0) {
          std::string w = gen;
          if (root != 0) {
            BigRat nr = -root;
            std::string rs = nr.str();
            w += (rs[0] == '-') ? " - " + rs.substr(1) : " + " + rs;
          }
          throw ReducibleModulusError(w);
        }
      }
}

}  // namespace

FieldPtr ExactField::quotient(FieldPtr base, ElemVec modulus, std::string gen_name) {
  if (!base) throw std::invalid_argument("quotient: null base");
  ptrim(*base, modulus);
  if (pdeg(modulus) < 2)
    throw ParseError("quotient modulus must have degree >= 2");
  modulus = pmonic(*base, std::move(modulus));
  if (base->kind() == Kind::Rationals) rational_root_check(modulus, gen_name);
  auto f = new ExactField();
  f->kind_ = Kind::Quotient;
  f->base_ = std::move(base);
  f->modulus_ = std::move(modulus);
  f->gen_ = std::move(gen_name);
  return FieldPtr(f);
}

FieldPtr ExactField::functions(FieldPtr base, std::string var_name) {
  if (!base) throw std::invalid_argument("functions: null base");
  auto f = new ExactField();
  f->kind_ = Kind::FunctionField;
  f->base_ = std::move(base);
  f->gen_ = std::move(var_name);
  return FieldPtr(f);
}

// ---- element construction --------------------------------------------------

ExactElem ExactField::zero() const {
  switch (kind_) {
    case Kind::Rationals: return {BigRat(0)};
    case Kind::Quotient: return {ElemVec{}};
    case Kind::FunctionField: return {RatFunRep{{}, {base_->one()}}};
  }
  std::abort();
}

ExactElem ExactField::one() const { return from_int(1); }

ExactElem ExactField::from_int(long long v) const { return from_rat(BigRat(v)); }

ExactElem ExactField::from_rat(const BigRat& r) const {
  switch (kind_) {
    case Kind::Rationals: return {r};
    case Kind::Quotient: {
      if (r == 0) return zero();
      return {ElemVec{base_->from_rat(r)}};
    }
    case Kind::FunctionField: {
      if (r == 0) return zero();
      return {RatFunRep{{base_->from_rat(r)}, {base_->one()}}};
    }
  }
  std::abort();
}

ExactElem ExactField::lift(const ExactElem& base_elem) const {
  switch (kind_) {
    case Kind::Rationals:
      throw std::logic_error("lift: rationals have no base field");
    case Kind::Quotient:
      if (base_->is_zero(base_elem)) return zero();
      return {ElemVec{base_elem}};
    case Kind::FunctionField:
      if (base_->is_zero(base_elem)) return zero();
      return {RatFunRep{{base_elem}, {base_->one()}}};
  }
  std::abort();
}

ExactElem ExactField::gen() const {
  switch (kind_) {
    case Kind::Rationals:
      throw std::logic_error("gen: rationals have no generator");
    case Kind::Quotient:
      return {ElemVec{base_->zero(), base_->one()}};
    case Kind::FunctionField:
      return {RatFunRep{{base_->zero(), base_->one()}, {base_->one()}}};
  }
  std::abort();
}

// ---- arithmetic -------------------------------------------------------------

namespace {

// Canonical fraction: den monic, gcd(num, den) = 1, zero = {} / {1}.
RatFunRep normalize_fraction(const ExactField& B, ElemVec num, ElemVec den) {
  ptrim(B, num);
  ptrim(B, den);
  if (den.empty()) throw DivisionByZeroError();
  if (num.empty()) return {ElemVec{}, ElemVec{B.one()}};
  ElemVec g = pgcd_monic(B, num, den);
  if (pdeg(g) > 0) {
    ElemVec q;
    pmod(B, num, g, &q);
    num = q;
    pmod(B, den, g, &q);
    den = q;
  }
  ExactElem s = B.inv(den.back());
  num = pscale(B, num, s);
  den = pscale(B, den, s);
  return {std::move(num), std::move(den)};
}

}  // namespace

ExactElem ExactField::add(const ExactElem& a, const ExactElem& b) const {
  switch (kind_) {
    case Kind::Rationals:
      return {BigRat(std::get<BigRat>(a.rep) + std::get<BigRat>(b.rep))};
    case Kind::Quotient:
      return {padd(*base_, std::get<ElemVec>(a.rep), std::get<ElemVec>(b.rep))};
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      const auto& y = std::get<RatFunRep>(b.rep);
      ElemVec num = padd(*base_, pmul(*base_, x.num, y.den), pmul(*base_, y.num, x.den));
      ElemVec den = pmul(*base_, x.den, y.den);
      return {normalize_fraction(*base_, std::move(num), std::move(den))};
    }
  }
  std::abort();
}

ExactElem ExactField::sub(const ExactElem& a, const ExactElem& b) const {
  return add(a, neg(b));
}

ExactElem ExactField::neg(const ExactElem& a) const {
  switch (kind_) {
    case Kind::Rationals: return {BigRat(-std::get<BigRat>(a.rep))};
    case Kind::Quotient: return {pneg(*base_, std::get<ElemVec>(a.rep))};
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      return {RatFunRep{pneg(*base_, x.num), x.den}};
    }
  }
  std::abort();
}

ExactElem ExactField::mul(const ExactElem& a, const ExactElem& b) const {
  switch (kind_) {
    case Kind::Rationals:
      return {BigRat(std::get<BigRat>(a.rep) * std::get<BigRat>(b.rep))};
    case Kind::Quotient: {
      ElemVec r = pmul(*base_, std::get<ElemVec>(a.rep), std::get<ElemVec>(b.rep));
      return {pmod(*base_, std::move(r), modulus_)};
    }
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      const auto& y = std::get<RatFunRep>(b.rep);
      return {normalize_fraction(*base_, pmul(*base_, x.num, y.num),
                                 pmul(*base_, x.den, y.den))};
    }
  }
  std::abort();
}

ExactElem ExactField::inv(const ExactElem& a) const {
  switch (kind_) {
    case Kind::Rationals: {
      const auto& r = std::get<BigRat>(a.rep);
      if (r == 0) throw DivisionByZeroError();
      return {BigRat(1 / r)};
    }
    case Kind::Quotient: {
      const auto& av = std::get<ElemVec>(a.rep);
      if (av.empty()) throw DivisionByZeroError();
      // Extended Euclid against the modulus; a nontrivial gcd is a proper
      // factor of the modulus and proves it reducible.
      ElemVec r0 = modulus_, r1 = av;
      ElemVec u0{}, u1{base_->one()};  // u_i * a = r_i (mod modulus)
      while (!r1.empty()) {
        ElemVec q;
        ElemVec rem = pmod(*base_, r0, r1, &q);
        ElemVec u2 = psub(*base_, u0, pmul(*base_, q, u1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
      }
      if (pdeg(r0) > 0)
        throw ReducibleModulusError(pformat(*base_, pmonic(*base_, r0), gen_));
      ExactElem s = base_->inv(r0[0]);
      ElemVec r = pscale(*base_, u0, s);
      return {pmod(*base_, std::move(r), modulus_)};
    }
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      if (x.num.empty()) throw DivisionByZeroError();
      return {normalize_fraction(*base_, x.den, x.num)};
    }
  }
  std::abort();
}

ExactElem ExactField::div(const ExactElem& a, const ExactElem& b) const {
  return mul(a, inv(b));
}

ExactElem ExactField::pow(const ExactElem& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  ExactElem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool ExactField::is_zero(const ExactElem& a) const {
  switch (kind_) {
    case Kind::Rationals: return std::get<BigRat>(a.rep) == 0;
    case Kind::Quotient: return std::get<ElemVec>(a.rep).empty();
    case Kind::FunctionField: return std::get<RatFunRep>(a.rep).num.empty();
  }
  std::abort();
}

bool ExactField::eq(const ExactElem& a, const ExactElem& b) const {
  return cmp(a, b) == 0;
}

int ExactField::cmp(const ExactElem& a, const ExactElem& b) const {
  switch (kind_) {
    case Kind::Rationals: {
      const auto& x = std::get<BigRat>(a.rep);
      const auto& y = std::get<BigRat>(b.rep);
      return x < y ? -1 : (x == y ? 0 : 1);
    }
    case Kind::Quotient:
      return pcmp(*base_, std::get<ElemVec>(a.rep), std::get<ElemVec>(b.rep));
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      const auto& y = std::get<RatFunRep>(b.rep);
      int c = pcmp(*base_, x.num, y.num);
      return c != 0 ? c : pcmp(*base_, x.den, y.den);
    }
  }
  std::abort();
}

std::string ExactField::format(const ExactElem& a) const {
  switch (kind_) {
    case Kind::Rationals: return std::get<BigRat>(a.rep).str();
    case Kind::Quotient: return pformat(*base_, std::get<ElemVec>(a.rep), gen_);
    case Kind::FunctionField: {
      const auto& x = std::get<RatFunRep>(a.rep);
      std::string num = pformat(*base_, x.num, gen_);
      if (pdeg(x.den) == 0 && base_->eq(x.den[0], base_->one())) return num;
      std::string den = pformat(*base_, x.den, gen_);
      if (!elem_atomic(num)) num = "(" + num + ")";
      if (!elem_atomic(den)) den = "(" + den + ")";
      return num + "/" + den;
    }
  }
  std::abort();
}

std::string ExactField::describe() const {
  switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::Quotient:
      return base_->describe() + "[" + gen_ + "]/(" + pformat(*base_, modulus_, gen_) + ")";
    case Kind::FunctionField: return base_->describe() + "(" + gen_ + ")";
  }
  std::abort();
}

std::vector<std::string> ExactField::generator_names() const {
  std::vector<std::string> names;
  if (base_) names = base_->generator_names();
  if (kind_ != Kind::Rationals) names.push_back(gen_);
  return names;
}

ExactElem ExactField::named_gen(const std::string& name) const {
  if (kind_ != Kind::Rationals && gen_ == name) return gen();
  if (base_) return lift(base_->named_gen(name));
  throw ParseError("unknown generator: " + name);
}

int ExactField::q_dimension() const {
  switch (kind_) {
    case Kind::Rationals: return 1;
    case Kind::Quotient: return degree() * base_->q_dimension();
    case Kind::FunctionField:
      throw std::logic_error("q_dimension: function field is infinite over Q");
  }
  std::abort();
}

// ---- minimal polynomial -----------------------------------------------------

namespace {

void to_qvec(const FieldPtr& F, const ExactElem& a, std::vector<BigRat>& out) {
  switch (F->kind()) {
    case ExactField::Kind::Rationals:
      out.push_back(std::get<BigRat>(a.rep));
      return;
    case ExactField::Kind::Quotient: {
      const auto& v = std::get<ElemVec>(a.rep);
      for (int j = 0; j < F->degree(); ++j) {
        if (j < static_cast<int>(v.size()))
          to_qvec(F->base(), v[j], out);
        else
          to_qvec(F->base(), F->base()->zero(), out);
      }
      return;
    }
    default:
      throw std::logic_error("to_qvec: function field element");
  }
}

}  // namespace

QPoly minimal_polynomial(const FieldPtr& field, const ExactElem& a) {
  int dim = field->q_dimension();
  // Row-reduced span of the powers seen so far, with the combination that
  // produced each row in terms of the original powers.
  struct Row {
    std::vector<BigRat> vec;
    int pivot;
    std::vector<BigRat> combo;
  };
  std::vector<Row> rows;
  ExactElem p = field->one();
  for (int k = 0; k <= dim; ++k) {
    std::vector<BigRat> v;
    v.reserve(dim);
    to_qvec(field, p, v);
    std::vector<BigRat> combo(k + 1, BigRat(0));
    combo[k] = 1;
    for (const Row& r : rows) {
      if (v[r.pivot] == 0) continue;
      BigRat f = v[r.pivot] / r.vec[r.pivot];
      for (int i = 0; i < dim; ++i) v[i] -= f * r.vec[i];
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= f * r.combo[i];
    }
    int pivot = -1;
    for (int i = 0; i < dim; ++i)
      if (v[i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      // sum combo[i] * a^i = 0 with combo[k] = 1: that is the minimal poly.
      QPoly mp(combo.begin(), combo.end());
      return mp;
    }
    rows.push_back({std::move(v), pivot, std::move(combo)});
    p = field->mul(p, a);
  }
  throw std::logic_error("minimal_polynomial: no dependency within tower dimension");
}

std::string qpoly_format(const QPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string out;
  for (int d = static_cast<int>(f.size()) - 1; d >= 0; --d) {
    const BigRat& c = f[d];
    if (c == 0) continue;
    bool neg = c < 0;
    BigRat ac = neg ? BigRat(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (ac != 1 || d == 0) out += ac.str();
    if (d > 0) {
      if (ac != 1) out += "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mk3
