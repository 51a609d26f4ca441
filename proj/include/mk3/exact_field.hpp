#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mk3/bigint.hpp"
#include "mk3/errors.hpp"

namespace mk3 {

struct ExactElem;
// Dense polynomial coefficients over a base field, index = degree,
// trailing zeros trimmed (empty vector = zero).
using ElemVec = std::vector<ExactElem>;

// Reduced fraction of polynomials: den monic, gcd(num, den) = 1.
struct RatFunRep {
  ElemVec num;
  ElemVec den;
};

// Value in an exact characteristic-0 field; the interpretation of the
// variant depends on the owning field node (rational / extension / fraction).
struct ExactElem {
  std::variant<BigRat, ElemVec, RatFunRep> rep;
};

class ExactField;
using FieldPtr = std::shared_ptr<const ExactField>;

// A node in a field-descriptor tower: the rationals, a quotient extension
// base[gen]/(modulus), or a rational function field base(var). Immutable
// after construction; all operations are pure and safe to share.
class ExactField : public std::enable_shared_from_this<ExactField> {
 public:
  enum class Kind { Rationals, Quotient, FunctionField };

  static FieldPtr rationals();
  // Modulus is given over `base`, degree >= 2; it is normalized monic.
  // A rational-root test runs when base is Q; deeper reducibility is
  // detected lazily by inversion failure (ReducibleModulusError).
  static FieldPtr quotient(FieldPtr base, ElemVec modulus, std::string gen_name);
  static FieldPtr functions(FieldPtr base, std::string var_name);

  Kind kind() const { return kind_; }
  const FieldPtr& base() const { return base_; }
  const ElemVec& modulus() const { return modulus_; }
  const std::string& gen_name() const { return gen_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }

  ExactElem zero() const;
  ExactElem one() const;
  ExactElem from_int(long long v) const;
  ExactElem from_rat(const BigRat& r) const;
  // Embeds an element of base() into this field.
  ExactElem lift(const ExactElem& base_elem) const;
  // The extension generator / function-field variable.
  ExactElem gen() const;

  ExactElem add(const ExactElem& a, const ExactElem& b) const;
  ExactElem sub(const ExactElem& a, const ExactElem& b) const;
  ExactElem neg(const ExactElem& a) const;
  ExactElem mul(const ExactElem& a, const ExactElem& b) const;
  ExactElem inv(const ExactElem& a) const;
  ExactElem div(const ExactElem& a, const ExactElem& b) const;
  ExactElem pow(const ExactElem& a, long long e) const;
  bool is_zero(const ExactElem& a) const;
  bool eq(const ExactElem& a, const ExactElem& b) const;
  // Total order on canonical forms (for deterministic sets/representatives).
  int cmp(const ExactElem& a, const ExactElem& b) const;
  std::string format(const ExactElem& a) const;
  // Descriptor text, e.g. "Q[i]/(i^2+1)(t)".
  std::string describe() const;

  // Names of all generators along the tower, innermost first.
  std::vector<std::string> generator_names() const;
  // Looks a generator up by name anywhere in the tower and lifts it here.
  ExactElem named_gen(const std::string& name) const;
  // Q-vector-space dimension of a finite tower; throws for function fields.
  int q_dimension() const;

 private:
  ExactField() = default;
  Kind kind_ = Kind::Rationals;
  FieldPtr base_;
  ElemVec modulus_;
  std::string gen_;
};

// Monic rational polynomial, index = degree.
using QPoly = std::vector<BigRat>;

// Minimal polynomial of an element of a finite tower over Q, by linear
// algebra on powers of the element in the flattened tower basis.
QPoly minimal_polynomial(const FieldPtr& field, const ExactElem& a);

std::string qpoly_format(const QPoly& f, const std::string& var);

// Field-trait wrapper so generic surface/orbit code can run over towers.
struct CharZeroField {
  using Elem = ExactElem;
  FieldPtr F;

  Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
  Elem neg(const Elem& a) const { return F->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
  Elem inv(const Elem& a) const { return F->inv(a); }
  Elem zero() const { return F->zero(); }
  Elem one() const { return F->one(); }
  Elem from_int(long long v) const { return F->from_int(v); }
  bool is_zero(const Elem& a) const { return F->is_zero(a); }
  bool eq(const Elem& a, const Elem& b) const { return F->eq(a, b); }
  int cmp(const Elem& a, const Elem& b) const { return F->cmp(a, b); }
  std::string format(const Elem& a) const { return F->format(a); }
};

}  // namespace mk3
