#pragma once

#include <stdexcept>
#include <string>

namespace mk3 {

// Base class for all domain errors raised by the engine.
struct Mk3Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimeError : Mk3Error {
  explicit NotPrimeError(unsigned long long n)
      : Mk3Error("not prime: " + std::to_string(n)) {}
};

struct CharacteristicTwoError : Mk3Error {
  CharacteristicTwoError() : Mk3Error("characteristic 2 is not supported") {}
};

struct DivisionByZeroError : Mk3Error {
  DivisionByZeroError() : Mk3Error("division by zero") {}
};

// Raised when extended-Euclid inversion in a quotient extension meets a
// nonunit, noninvertible element; carries a proper factor of the modulus.
struct ReducibleModulusError : Mk3Error {
  std::string witness;
  explicit ReducibleModulusError(std::string factor)
      : Mk3Error("reducible modulus, witness factor: " + factor),
        witness(std::move(factor)) {}
};

// Coordinate quadratic vanishes identically (degenerate fiber direction).
struct IdenticallyZeroError : Mk3Error {
  IdenticallyZeroError() : Mk3Error("coordinate quadratic is identically zero") {}
};

struct BadTwistError : Mk3Error {
  BadTwistError() : Mk3Error("twist scalar is not a fourth root of unity") {}
};

// Sheet-swap requested along a degenerate fiber direction.
struct DegenerateFiberError : Mk3Error {
  DegenerateFiberError() : Mk3Error("degenerate fiber: quadratic vanishes identically") {}
};

struct NotOnSurfaceError : Mk3Error {
  NotOnSurfaceError() : Mk3Error("point does not lie on the surface") {}
  explicit NotOnSurfaceError(const std::string& what_arg) : Mk3Error(what_arg) {}
};

struct OrbitCapExceededError : Mk3Error {
  std::size_t cap;
  explicit OrbitCapExceededError(std::size_t c)
      : Mk3Error("orbit closure exceeded cap " + std::to_string(c)), cap(c) {}
};

struct SizeMismatchError : Mk3Error {
  std::size_t found = 0;
  std::size_t expected = 0;
  using Mk3Error::Mk3Error;
  SizeMismatchError(const std::string& label, std::size_t found_arg,
                    std::size_t expected_arg)
      : Mk3Error(label + ": found " + std::to_string(found_arg) +
                 ", expected " + std::to_string(expected_arg)),
        found(found_arg),
        expected(expected_arg) {}
};

struct NoRootModPError : Mk3Error {
  using Mk3Error::Mk3Error;
};

// Degenerate char-0 specialization that would collapse a family.
struct BadSpecializationError : Mk3Error {
  using Mk3Error::Mk3Error;
};

struct ParseError : Mk3Error {
  using Mk3Error::Mk3Error;
};

struct UnknownFamilyError : Mk3Error {
  explicit UnknownFamilyError(const std::string& name)
      : Mk3Error("unknown finite-orbit family: " + name) {}
};

// A defining relation of a specialized family fails to hold.
struct RelationFailureError : Mk3Error {
  using Mk3Error::Mk3Error;
};

// One of the bundled consistency checks failed; the message names it.
struct CheckFailureError : Mk3Error {
  using Mk3Error::Mk3Error;
};

}  // namespace mk3
