#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mk3/autos.hpp"
#include "mk3/geometry.hpp"

namespace mk3 {

// Partition of a concrete point set under a generator list. Orbits are
// numbered by their least member index; members are sorted indices into
// `points`, which keeps the enumeration order of the input.
struct FpDecomposition {
  std::vector<FpTriple> points;
  std::vector<std::vector<std::uint32_t>> orbits;
  std::vector<std::uint32_t> orbit_of;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    s.reserve(orbits.size());
    for (auto& o : orbits) s.push_back(o.size());
    return s;
  }
};

// Union-find decomposition of an explicit generator-stable point set.
// Throws Mk3Error if a generator image leaves the set.
FpDecomposition decompose_points(const PrimeFieldCtx& ctx,
                                 const Form222<FpField>& form,
                                 std::vector<FpTriple> points,
                                 const std::vector<Generator>& generators);

FpDecomposition orbit_decomposition(const WkSurface<FpField>& w,
                                    const PrimeFieldCtx& ctx,
                                    const std::vector<Generator>& generators);

// Decompose one fiber of the axis projection under the fiber-stabilizing
// generators; an empty fiber yields zero orbits.
FpDecomposition fibral_orbit_decomposition(const WkSurface<FpField>& w,
                                           const PrimeFieldCtx& ctx, int axis,
                                           const FpP1& t);

// Orbit sizes of a full-surface decomposition minus the two trivial orbits:
// the fixed point (0,0,0) and the three points with two infinite coordinates.
std::vector<std::size_t> nontrivial_sizes(const FpDecomposition& d,
                                          const PrimeFieldCtx& ctx);

// One representative (least member) per class of F_p* under k ~ zeta^3 k
// over the fourth roots of unity zeta.
std::vector<std::uint64_t> k_class_representatives(const PrimeFieldCtx& ctx);

struct CensusRow {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::vector<std::size_t> sizes;  // nontrivial orbit sizes, ascending

  bool operator==(const CensusRow&) const = default;
};

CensusRow compute_census_row(std::uint64_t p, std::uint64_t k,
                             bool with_delta = false);

// "24^2, 48, 3456" with ascending sizes and multiplicity exponents.
std::string format_sizes_shorthand(const std::vector<std::size_t>& sizes);

// CSV cell list "24,24,48,3456" (ascending, no shorthand).
std::string format_sizes_csv(const std::vector<std::size_t>& sizes);

// Generic breadth-first orbit closure over any field; aborts with
// OrbitCapExceeded once the closure grows past `cap`.
template <typename F>
struct TripleLess {
  const F* f;
  bool operator()(const Triple<F>& a, const Triple<F>& b) const {
    return triple_cmp(*f, a, b) < 0;
  }
};

template <typename F>
using TripleSet = std::set<Triple<F>, TripleLess<F>>;

template <typename F>
TripleSet<F> orbit_closure(const F& f, const Form222<F>& form,
                           const std::vector<Triple<F>>& seeds,
                           const std::vector<Generator>& generators,
                           std::size_t cap = 1000000) {
  TripleSet<F> seen{TripleLess<F>{&f}};
  std::vector<Triple<F>> queue;
  for (const auto& s : seeds)
    if (seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    Triple<F> cur = std::move(queue.back());
    queue.pop_back();
    for (const Generator& g : generators) {
      Triple<F> im = apply_generator(f, form, g, cur);
      if (seen.insert(im).second) {
        if (seen.size() > cap) throw OrbitCapExceededError(cap);
        queue.push_back(std::move(im));
      }
    }
  }
  return seen;
}

}  // namespace mk3
