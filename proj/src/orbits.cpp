#include "mk3/orbits.hpp"

#include <algorithm>
#include <numeric>

namespace mk3 {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the least index as root
    parent[b] = a;
  }
};

}  // namespace

FpDecomposition decompose_points(const PrimeFieldCtx& ctx,
                                 const Form222<FpField>& form,
                                 std::vector<FpTriple> points,
                                 const std::vector<Generator>& generators) {
  FpField f{&ctx};
  const std::uint64_t n = ctx.p + 1;
  const std::uint64_t span = n * n * n;
  constexpr std::uint32_t kAbsent = 0xffffffffu;
  std::vector<std::uint32_t> index(span, kAbsent);
  for (std::uint32_t i = 0; i < points.size(); ++i)
    index[fp_point_key(ctx, points[i])] = i;

  UnionFind uf(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i)
    for (const Generator& g : generators) {
      FpTriple im = apply_generator(f, form, g, points[i]);
      std::uint32_t j = index[fp_point_key(ctx, im)];
      if (j == kAbsent)
        throw Mk3Error("generator image left the decomposed point set: " +
                       fp_point_format(im));
      uf.unite(i, j);
    }

  FpDecomposition d;
  d.orbit_of.assign(points.size(), 0);
  std::vector<std::uint32_t> orbit_id(points.size(), kAbsent);
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    std::uint32_t root = uf.find(i);
    if (orbit_id[root] == kAbsent) {
      orbit_id[root] = static_cast<std::uint32_t>(d.orbits.size());
      d.orbits.emplace_back();
    }
    d.orbit_of[i] = orbit_id[root];
    d.orbits[orbit_id[root]].push_back(i);
  }
  d.points = std::move(points);
  return d;
}

FpDecomposition orbit_decomposition(const WkSurface<FpField>& w,
                                    const PrimeFieldCtx& ctx,
                                    const std::vector<Generator>& generators) {
  FpField f{&ctx};
  return decompose_points(ctx, wk_form(f, w), enumerate_points(w, ctx),
                          generators);
}

FpDecomposition fibral_orbit_decomposition(const WkSurface<FpField>& w,
                                           const PrimeFieldCtx& ctx, int axis,
                                           const FpP1& t) {
  FpField f{&ctx};
  std::vector<FpTriple> fiber;
  for (auto& pt : enumerate_points(w, ctx))
    if (p1_eq(f, pt[axis - 1], t)) fiber.push_back(pt);
  return decompose_points(ctx, wk_form(f, w), std::move(fiber),
                          fibral_generators(axis));
}

std::vector<std::size_t> nontrivial_sizes(const FpDecomposition& d,
                                          const PrimeFieldCtx& ctx) {
  constexpr std::uint32_t kInvalidOrbit = 0xffffffffu;
  FpField f{&ctx};
  FpTriple origin{FpP1::finite(0), FpP1::finite(0), FpP1::finite(0)};
  FpTriple inf2{FpP1::finite(0), FpP1{true, 0}, FpP1{true, 0}};
  std::uint32_t skip1 = kInvalidOrbit, skip2 = kInvalidOrbit;
  for (std::uint32_t i = 0; i < d.points.size(); ++i) {
    if (triple_eq(f, d.points[i], origin)) skip1 = d.orbit_of[i];
    if (triple_eq(f, d.points[i], inf2)) skip2 = d.orbit_of[i];
  }
  std::vector<std::size_t> out;
  for (std::uint32_t o = 0; o < d.orbits.size(); ++o)
    if (o != skip1 && o != skip2) out.push_back(d.orbits[o].size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> k_class_representatives(const PrimeFieldCtx& ctx) {
  std::vector<std::uint64_t> zetas{1, ctx.p - 1};
  if (ctx.p % 4 == 1) {
    std::uint64_t i = *fp_sqrt(ctx, ctx.p - 1);
    zetas.push_back(i);
    zetas.push_back(ctx.neg(i));
  }
  std::vector<std::uint64_t> reps;
  std::vector<bool> seen(ctx.p, false);
  for (std::uint64_t k = 1; k < ctx.p; ++k) {
    if (seen[k]) continue;
    reps.push_back(k);
    for (std::uint64_t z : zetas) {
      std::uint64_t z3 = ctx.mul(ctx.mul(z, z), z);
      seen[ctx.mul(z3, k)] = true;
    }
  }
  return reps;
}

CensusRow compute_census_row(std::uint64_t p, std::uint64_t k, bool with_delta) {
  PrimeFieldCtx ctx = fp_make(p);
  auto d = orbit_decomposition(WkSurface<FpField>{k % p}, ctx,
                               standard_generators(with_delta));
  return CensusRow{p, k, nontrivial_sizes(d, ctx)};
}

std::string format_sizes_shorthand(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(sizes[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string format_sizes_csv(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t s : sizes) {
    if (!out.empty()) out += ",";
    out += std::to_string(s);
  }
  return out;
}

}  // namespace mk3
