#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mk3/bigint.hpp"
#include "mk3/exact_field.hpp"
#include "mk3/geometry.hpp"
#include "mk3/orbits.hpp"

namespace mk3 {

using ZeroP1 = P1<CharZeroField>;
using ZeroTriple = Triple<CharZeroField>;

// A finite full-group orbit materialized over its exact field of definition.
// The seeds are one point per suborbit of the permutation/sign group; their
// union under that subgroup is the whole orbit.
struct FiniteOrbitFamily {
  std::string name;
  FieldPtr field;
  ExactElem k;
  std::vector<ZeroTriple> seeds;
  std::size_t expected_size = 0;
  // Expected permutation/sign suborbit sizes, in seed order.
  std::vector<std::size_t> circ_suborbit_sizes;
  // Specializations of a function-field parameter xi with xi^bound = 1
  // collapse the family and are refused; 0 = no constraint.
  unsigned unit_specialization_bound = 0;
};

// The ten family names, in ascending orbit-size order.
const std::vector<std::string>& family_names();

// Materializes one family over its exact field. Throws UnknownFamilyError.
FiniteOrbitFamily build_family(const std::string& name);

struct FamilyReport {
  std::string name;
  std::size_t expected = 0;
  std::size_t found = 0;
  // Permutation/sign suborbit size of each seed, in seed order.
  std::vector<std::size_t> circ_sizes;
  // Sheet-swap-only suborbit sizes of the whole orbit, ascending.
  std::vector<std::size_t> sigma_sizes;
};

// Closes the seeds under the full group and checks the expected size, that
// the seeds' permutation/sign suborbits partition the orbit, and the
// expected suborbit sizes. Throws SizeMismatchError or NotOnSurfaceError.
FamilyReport verify_family(const FiniteOrbitFamily& fam);

struct ModpReduction {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::vector<FpTriple> seeds;
  std::size_t orbit_size = 0;
};

// Specializes the family's generators to the assigned residues, reduces k
// and the seeds, and re-verifies the orbit size inside W_k(F_p). Assignments
// map generator names to values in F_p; every quotient generator must be
// assigned a root of its defining polynomial mod p (NoRootModPError
// otherwise) and every function-field variable a value that avoids poles and
// the family's collapsing powers (BadSpecializationError otherwise).
// Throws SizeMismatchError when the reduced orbit size differs.
ModpReduction reduce_family_mod_p(
    const FiniteOrbitFamily& fam, std::uint64_t p,
    const std::map<std::string, std::uint64_t>& assignments);

struct Spec288Report {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::uint64_t alpha = 0, beta = 0, gamma = 0, delta = 0;
  // One of 3a^4 = -1, b^4 = -3, g^4 = -3 holds, collapsing 288 to 144.
  bool exceptional = false;
  std::size_t expected = 0;
  std::size_t orbit_size = 0;
  // Sheet-swap suborbit of (alpha, beta, gamma) and its stabilizer inside
  // the permutation/sign group.
  std::size_t sigma_orbit_size = 0;
  std::size_t stabilizer_size = 0;
};

// Verifies one finite-field member of the 288 family: the three curve
// relations, the delta and k formulas, the full orbit size (288, or 144 in
// the exceptional cases), the sheet-swap action table on the twelve
// representative points, and that the sheet-swap suborbit has size 24 with
// stabilizer {identity, (x,y,z) -> (x,-z,-y)}. Throws RelationFailureError
// or SizeMismatchError.
Spec288Report verify_288_specialization(std::uint64_t p, std::uint64_t k,
                                        std::uint64_t alpha, std::uint64_t beta,
                                        std::uint64_t gamma);

struct CautionaryReport {
  // Resultant of the degree-18 and degree-12 sheet-swap elimination
  // polynomials; 2^80 * 53^2, so they share a root only mod 2 and 53.
  BigInt resultant;
  std::size_t w8_f53_orbit = 0;   // orbit of (16,16,16) in W_8(F_53)
  std::size_t w2_f23_orbit = 0;   // orbit of (6,11,18) in W_2(F_23)
  std::size_t w13_f71_orbit = 0;  // orbit of (22,22,-23) in W_13(F_71)
  // Suborbit sizes of the 384-point orbit under the permutation/sign group
  // extended by inversions, in representative order: 48,48,48,48,96,96.
  std::vector<std::size_t> w13_suborbits;
  // The sheet swaps alone already span the whole 384-point orbit.
  bool w13_sigma_spans = false;
};

// Runs the three bundled consistency checks on orbit-size coincidences that
// exist only over special primes: the resultant isolating 53, the two
// 256-point orbits, and the 384-point inversion-invariant orbit with its
// suborbit structure. Throws CheckFailureError naming the failed check.
CautionaryReport cautionary_checks();

}  // namespace mk3
