#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mk3/geometry.hpp"
#include "mk3/orbits.hpp"
#include "mk3/prime_field.hpp"

namespace mk3 {

// Fiber of the coordinate projection pi_axis : W -> P^1.
struct FpFiberId {
  int axis;  // 1, 2, or 3
  FpP1 base;
};

// All points of W(F_p) whose axis coordinate equals the base, ordered by the
// free coordinates (first free slot ascending, then root order).
std::vector<FpTriple> fiber_points(const WkSurface<FpField>& w,
                                   const PrimeFieldCtx& ctx,
                                   const FpFiberId& fid);

// True iff the fiber is nonempty and the four fiber-stabilizing generators
// act transitively on it. Empty fibers count as not connected.
bool is_connected_fiber(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx,
                        const FpFiberId& fid);

// Base values t whose fiber is connected, sorted with Infinity last. The
// coordinate symmetry of W_k makes the set axis-independent, so axis 1 is
// the one scanned.
std::vector<FpP1> pi_connfib(const WkSurface<FpField>& w,
                             const PrimeFieldCtx& ctx);

// All coordinate values of all points of S, deduplicated and sorted.
std::vector<FpP1> flatten(const PrimeFieldCtx& ctx,
                          const std::vector<FpTriple>& S);

// Values of connfib appearing as a non-base coordinate of some point of the
// axis-1 fiber over t: the neighbor row used to wire up the cage graph.
std::vector<FpP1> fiber_link_targets(const WkSurface<FpField>& w,
                                     const PrimeFieldCtx& ctx, const FpP1& t,
                                     const std::vector<FpP1>& connfib);

// Graph on the connected-fiber bases; an edge joins t and t' when the fiber
// over t contains a point with coordinate t' (a symmetric relation on the
// coordinate-symmetric W_k).
struct CageGraph {
  std::vector<FpP1> vertices;  // pi_connfib, sorted
  std::vector<std::vector<std::uint32_t>> adjacency;  // vertex indices, sorted
  std::vector<std::uint32_t> component_of;
  std::size_t component_count = 0;
};

CageGraph cage_graph(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx);

// The cage as a point set: points of W(F_p) lying on at least one connected
// fiber, which for W_k means points with some coordinate in pi_connfib.
std::vector<FpTriple> cage_points(const WkSurface<FpField>& w,
                                  const PrimeFieldCtx& ctx);

std::string cage_graph_dot(const CageGraph& g);
std::string cage_graph_adjacency_json(const CageGraph& g);

// Bases s on `axis` whose fiber meets both given fibers: the fiber over t1
// on the lower-numbered remaining axis and the fiber over t2 on the
// higher-numbered one. Computed by two root-solvability lookups per s.
std::vector<FpP1> linking_set(const WkSurface<FpField>& w,
                              const PrimeFieldCtx& ctx, int axis,
                              const FpP1& t1, const FpP1& t2);

// Points of the curve cut out by freezing one coordinate in each of two
// copies of the surface equation. Variant 1 freezes (y, z) = (b1, b2) and
// scans x; variants 2 and 3 freeze (x, z) and (x, y) and scan y and z.
// Projection to the scanned coordinate surjects onto the linking set.
std::vector<FpTriple> c_curve_points(const WkSurface<FpField>& w,
                                     const PrimeFieldCtx& ctx, int variant,
                                     const FpP1& b1, const FpP1& b2);

// Ramification data for the degree-4 projection of the variant-1 curve to
// the x-line: A counts bases where exactly one of the two quadratic
// discriminants vanishes, B where both do. The projection's source has
// geometric genus at most bound, and always bound <= 5.
struct GenusBoundData {
  std::size_t A = 0;
  std::size_t B = 0;
  double bound = 0.0;  // -3 + A + 1.5 B
};

GenusBoundData genus_bound_data(const WkSurface<FpField>& w,
                                const PrimeFieldCtx& ctx, const FpP1& y0,
                                const FpP1& z0);

// Necessary condition for the variant-1 curve over (y0, z0) to be singular:
// a base coordinate in {0, Infinity}, equal squares, product of squares 1,
// or a root of 2b^2 +- kb +- 2 (the in-field form of the quarter-formula
// bases; square roots outside F_p never flag).
bool c1_singular_flag(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx,
                      const FpP1& y0, const FpP1& z0);

struct FiberPairFailure {
  FpFiberId f1, f2;
};

// Result of scanning fiber pairs for a third fiber meeting both. A failure
// means no fiber at all links the pair; a restricted failure means no
// connected fiber does.
struct FiberJumpingReport {
  std::size_t pairs_tested = 0;
  std::vector<FiberPairFailure> failures;
  std::vector<FiberPairFailure> restricted_failures;
};

// Scan unordered pairs of the 3(p+1) coordinate fibers. sample_pairs = 0
// tests every pair; otherwise a fixed-seed sample of that many pairs.
// jobs > 1 splits the pair space across threads; the merged report is
// deterministic either way.
FiberJumpingReport verify_fiber_jumping(const WkSurface<FpField>& w,
                                        const PrimeFieldCtx& ctx,
                                        std::size_t sample_pairs = 0,
                                        unsigned jobs = 1);

std::string fiber_jumping_report_json(const FiberJumpingReport& r);

}  // namespace mk3
