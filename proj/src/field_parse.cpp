#include "mk3/field_parse.hpp"

#include <cctype>
#include <memory>

namespace mk3 {

namespace {

struct Lexer {
  std::string s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "' at position " +
                       std::to_string(i) + " in: " + s);
  }
  bool name_ahead() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool digit_ahead() { return std::isdigit(static_cast<unsigned char>(peek())); }
  std::string name() {
    skip_ws();
    std::size_t j = i;
    while (j < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
      ++j;
    if (j == i) throw ParseError("expected name at position " + std::to_string(i));
    std::string n = s.substr(i, j - i);
    i = j;
    return n;
  }
  BigInt integer() {
    skip_ws();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw ParseError("expected integer at position " + std::to_string(i));
    BigInt v(s.substr(i, j - i));
    i = j;
    return v;
  }
};

// Expression evaluator templated over a value domain: the full field for
// element parsing, or the polynomial ring base[newgen] for modulus parsing.
template <typename Dom>
struct ExprParser {
  Lexer& lx;
  Dom& dom;

  typename Dom::Value expr() {
    auto v = term();
    for (;;) {
      if (lx.accept('+'))
        v = dom.add(v, term());
      else if (lx.accept('-'))
        v = dom.sub(v, term());
      else
        return v;
    }
  }

  typename Dom::Value term() {
    auto v = factor();
    for (;;) {
      if (lx.accept('*'))
        v = dom.mul(v, factor());
      else if (lx.accept('/'))
        v = dom.div(v, factor());
      else if (lx.name_ahead() || lx.digit_ahead() || lx.peek() == '(')
        v = dom.mul(v, factor());  // juxtaposition
      else
        return v;
    }
  }

  typename Dom::Value factor() {
    if (lx.accept('-')) return dom.neg(factor());
    auto v = primary();
    if (lx.accept('^')) {
      bool neg = lx.accept('-');
      BigInt e = lx.integer();
      long long ei = e.convert_to<long long>();
      v = dom.pow(v, neg ? -ei : ei);
    }
    return v;
  }

  typename Dom::Value primary() {
    if (lx.accept('(')) {
      auto v = expr();
      lx.expect(')');
      return v;
    }
    if (lx.digit_ahead()) return dom.from_int(lx.integer());
    if (lx.name_ahead()) return dom.variable(lx.name());
    throw ParseError("unexpected character at position " + std::to_string(lx.i) +
                     " in: " + lx.s);
  }
};

struct FieldDom {
  using Value = ExactElem;
  FieldPtr F;

  Value add(const Value& a, const Value& b) { return F->add(a, b); }
  Value sub(const Value& a, const Value& b) { return F->sub(a, b); }
  Value mul(const Value& a, const Value& b) { return F->mul(a, b); }
  Value div(const Value& a, const Value& b) { return F->div(a, b); }
  Value neg(const Value& a) { return F->neg(a); }
  Value pow(const Value& a, long long e) { return F->pow(a, e); }
  Value from_int(const BigInt& v) { return F->from_rat(BigRat(v)); }
  Value variable(const std::string& n) { return F->named_gen(n); }
};

// Polynomials in one new generator over a base field; division is allowed
// only by degree-0 values (needed for moduli like a^2 + (b^2+3b+1)/b).
struct PolyDom {
  using Value = ElemVec;
  FieldPtr base;
  std::string newgen;

  void trim(Value& v) {
    while (!v.empty() && base->is_zero(v.back())) v.pop_back();
  }
  Value add(const Value& a, const Value& b) {
    Value r(std::max(a.size(), b.size()), base->zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = base->add(r[i], b[i]);
    trim(r);
    return r;
  }
  Value neg(const Value& a) {
    Value r = a;
    for (auto& c : r) c = base->neg(c);
    return r;
  }
  Value sub(const Value& a, const Value& b) { return add(a, neg(b)); }
  Value mul(const Value& a, const Value& b) {
    if (a.empty() || b.empty()) return {};
    Value r(a.size() + b.size() - 1, base->zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = base->add(r[i + j], base->mul(a[i], b[j]));
    trim(r);
    return r;
  }
  Value div(const Value& a, const Value& b) {
    if (b.size() != 1)
      throw ParseError("modulus expression: division by a non-constant in " + newgen);
    Value r = a;
    ExactElem s = base->inv(b[0]);
    for (auto& c : r) c = base->mul(c, s);
    return r;
  }
  Value pow(const Value& a, long long e) {
    if (e < 0) {
      if (a.size() != 1) {
        throw ParseError("modulus expression: negative power of a non-constant in " +
                         newgen);
      }
      return {base->pow(a[0], e)};
    }
    Value r{base->one()}, x = a;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  Value from_int(const BigInt& v) {
    if (v == 0) return {};
    return {base->from_rat(BigRat(v))};
  }
  Value variable(const std::string& n) {
    if (n == newgen) return {base->zero(), base->one()};
    return {base->named_gen(n)};
  }
};

}  // namespace

FieldPtr parse_field(const std::string& text) {
  Lexer lx{text};
  std::string head = lx.name();
  if (head != "Q") throw ParseError("field descriptor must start with Q: " + text);
  FieldPtr f = ExactField::rationals();
  for (;;) {
    if (lx.accept('[')) {
      std::string gen = lx.name();
      lx.expect(']');
      lx.expect('/');
      lx.expect('(');
      PolyDom dom{f, gen};
      ExprParser<PolyDom> p{lx, dom};
      ElemVec modulus = p.expr();
      lx.expect(')');
      f = ExactField::quotient(f, std::move(modulus), gen);
    } else if (lx.accept('(')) {
      std::string var = lx.name();
      lx.expect(')');
      f = ExactField::functions(f, var);
    } else {
      break;
    }
  }
  if (!lx.done()) throw ParseError("trailing characters in field descriptor: " + text);
  return f;
}

ExactElem parse_element(const FieldPtr& field, const std::string& text) {
  Lexer lx{text};
  FieldDom dom{field};
  ExprParser<FieldDom> p{lx, dom};
  ExactElem v = p.expr();
  if (!lx.done()) throw ParseError("trailing characters in element: " + text);
  return v;
}

}  // namespace mk3
