#include "mk3/fibers.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "mk3/autos.hpp"

namespace mk3 {

namespace {

template <typename Fn>
void each_p1(const PrimeFieldCtx& ctx, Fn&& fn) {
  for (std::uint64_t v = 0; v < ctx.p; ++v) fn(FpP1::finite(v));
  fn(FpP1{true, 0});
}

// Dense index of a P^1(F_p) value: finite v -> v, Infinity -> p.
std::uint64_t p1_index(const PrimeFieldCtx& ctx, const FpP1& a) {
  return a.is_inf ? ctx.p : a.v;
}

FpP1 p1_from_index(const PrimeFieldCtx& ctx, std::uint64_t i) {
  return i == ctx.p ? FpP1{true, 0} : FpP1::finite(i);
}

void sort_unique(const FpField& f, std::vector<FpP1>& v) {
  std::sort(v.begin(), v.end(),
            [&](const FpP1& a, const FpP1& b) { return p1_cmp(f, a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end(),
                      [&](const FpP1& a, const FpP1& b) { return p1_eq(f, a, b); }),
          v.end());
}

bool sorted_contains(const FpField& f, const std::vector<FpP1>& sorted,
                     const FpP1& a) {
  return std::binary_search(
      sorted.begin(), sorted.end(), a,
      [&](const FpP1& x, const FpP1& y) { return p1_cmp(f, x, y) < 0; });
}

// Nonempty intersection of the fibers over s on axis i and over t on axis
// j != i: the remaining coordinate satisfies a solvable quadratic.
bool fibers_meet(const FpField& f, const PrimeFieldCtx& ctx,
                 const Form222<FpField>& form, int i, const FpP1& s, int j,
                 const FpP1& t) {
  const int free_axis = 6 - i - j;
  FpTriple pt{FpP1::finite(0), FpP1::finite(0), FpP1::finite(0)};
  pt[i - 1] = s;
  pt[j - 1] = t;
  return quad_solvable_fp(ctx, coord_quadratic(f, form, pt, free_axis));
}

}  // namespace

std::vector<FpTriple> fiber_points(const WkSurface<FpField>& w,
                                   const PrimeFieldCtx& ctx,
                                   const FpFiberId& fid) {
  FpField f{&ctx};
  const auto form = wk_form(f, w);
  const int scan_slot = fid.axis == 1 ? 1 : 0;
  const int solve_slot = 3 - (fid.axis - 1) - scan_slot;
  std::vector<FpTriple> out;
  each_p1(ctx, [&](const FpP1& s) {
    FpTriple pt{FpP1::finite(0), FpP1::finite(0), FpP1::finite(0)};
    pt[fid.axis - 1] = fid.base;
    pt[scan_slot] = s;
    const auto q = coord_quadratic(f, form, pt, solve_slot + 1);
    for (const auto& r : quad_roots_fp(ctx, q)) {
      pt[solve_slot] = r;
      out.push_back(pt);
    }
  });
  return out;
}

bool is_connected_fiber(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx,
                        const FpFiberId& fid) {
  auto pts = fiber_points(w, ctx, fid);
  if (pts.empty()) return false;
  FpField f{&ctx};
  const auto d = decompose_points(ctx, wk_form(f, w), std::move(pts),
                                  fibral_generators(fid.axis));
  return d.orbits.size() == 1;
}

std::vector<FpP1> pi_connfib(const WkSurface<FpField>& w,
                             const PrimeFieldCtx& ctx) {
  std::vector<FpP1> out;
  each_p1(ctx, [&](const FpP1& t) {
    if (is_connected_fiber(w, ctx, FpFiberId{1, t})) out.push_back(t);
  });
  return out;
}

std::vector<FpP1> flatten(const PrimeFieldCtx& ctx,
                          const std::vector<FpTriple>& S) {
  FpField f{&ctx};
  std::vector<FpP1> out;
  out.reserve(3 * S.size());
  for (const auto& pt : S)
    for (const auto& c : pt) out.push_back(c);
  sort_unique(f, out);
  return out;
}

std::vector<FpP1> fiber_link_targets(const WkSurface<FpField>& w,
                                     const PrimeFieldCtx& ctx, const FpP1& t,
                                     const std::vector<FpP1>& connfib) {
  FpField f{&ctx};
  std::vector<FpP1> out;
  for (const auto& pt : fiber_points(w, ctx, FpFiberId{1, t})) {
    if (sorted_contains(f, connfib, pt[1])) out.push_back(pt[1]);
    if (sorted_contains(f, connfib, pt[2])) out.push_back(pt[2]);
  }
  sort_unique(f, out);
  return out;
}

CageGraph cage_graph(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx) {
  FpField f{&ctx};
  CageGraph g;
  g.vertices = pi_connfib(w, ctx);
  const std::size_t n = g.vertices.size();
  g.adjacency.assign(n, {});
  auto vertex_index = [&](const FpP1& a) -> std::size_t {
    auto it = std::lower_bound(
        g.vertices.begin(), g.vertices.end(), a,
        [&](const FpP1& x, const FpP1& y) { return p1_cmp(f, x, y) < 0; });
    return static_cast<std::size_t>(it - g.vertices.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& tgt :
         fiber_link_targets(w, ctx, g.vertices[i], g.vertices)) {
      const std::uint32_t j = static_cast<std::uint32_t>(vertex_index(tgt));
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  // Label components in order of least vertex index.
  constexpr std::uint32_t kUnset = 0xffffffffu;
  g.component_of.assign(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.component_of[i] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(g.component_count++);
    std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(i)};
    g.component_of[i] = label;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (const std::uint32_t u : g.adjacency[v])
        if (g.component_of[u] == kUnset) {
          g.component_of[u] = label;
          stack.push_back(u);
        }
    }
  }
  return g;
}

std::vector<FpTriple> cage_points(const WkSurface<FpField>& w,
                                  const PrimeFieldCtx& ctx) {
  FpField f{&ctx};
  const auto connfib = pi_connfib(w, ctx);
  std::vector<FpTriple> out;
  for (const auto& pt : enumerate_points(w, ctx)) {
    if (sorted_contains(f, connfib, pt[0]) ||
        sorted_contains(f, connfib, pt[1]) ||
        sorted_contains(f, connfib, pt[2]))
      out.push_back(pt);
  }
  return out;
}

std::string cage_graph_dot(const CageGraph& g) {
  std::ostringstream os;
  os << "graph cage {\n";
  for (const auto& v : g.vertices) os << "  \"" << fp_p1_format(v) << "\";\n";
  for (std::size_t i = 0; i < g.adjacency.size(); ++i)
    for (const std::uint32_t j : g.adjacency[i])
      if (j >= i)
        os << "  \"" << fp_p1_format(g.vertices[i]) << "\" -- \""
           << fp_p1_format(g.vertices[j]) << "\";\n";
  os << "}\n";
  return os.str();
}

std::string cage_graph_adjacency_json(const CageGraph& g) {
  std::ostringstream os;
  os << "{\"vertices\":[";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (i) os << ",";
    os << "\"" << fp_p1_format(g.vertices[i]) << "\"";
  }
  os << "],\"adjacency\":[";
  for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < g.adjacency[i].size(); ++j) {
      if (j) os << ",";
      os << g.adjacency[i][j];
    }
    os << "]";
  }
  os << "],\"component_of\":[";
  for (std::size_t i = 0; i < g.component_of.size(); ++i) {
    if (i) os << ",";
    os << g.component_of[i];
  }
  os << "],\"component_count\":" << g.component_count << "}";
  return os.str();
}

std::vector<FpP1> linking_set(const WkSurface<FpField>& w,
                              const PrimeFieldCtx& ctx, int axis,
                              const FpP1& t1, const FpP1& t2) {
  FpField f{&ctx};
  const auto form = wk_form(f, w);
  const int o1 = axis == 1 ? 2 : 1;
  const int o2 = axis == 3 ? 2 : 3;
  std::vector<FpP1> out;
  each_p1(ctx, [&](const FpP1& s) {
    if (fibers_meet(f, ctx, form, axis, s, o1, t1) &&
        fibers_meet(f, ctx, form, axis, s, o2, t2))
      out.push_back(s);
  });
  return out;
}

std::vector<FpTriple> c_curve_points(const WkSurface<FpField>& w,
                                     const PrimeFieldCtx& ctx, int variant,
                                     const FpP1& b1, const FpP1& b2) {
  FpField f{&ctx};
  const auto form = wk_form(f, w);
  const FpP1 ph = FpP1::finite(0);
  std::vector<FpTriple> out;
  if (variant == 1) {
    each_p1(ctx, [&](const FpP1& x) {
      const auto qy = coord_quadratic(f, form, FpTriple{x, ph, b2}, 2);
      const auto qz = coord_quadratic(f, form, FpTriple{x, b1, ph}, 3);
      for (const auto& ry : quad_roots_fp(ctx, qy))
        for (const auto& rz : quad_roots_fp(ctx, qz))
          out.push_back(FpTriple{x, ry, rz});
    });
  } else if (variant == 2) {
    each_p1(ctx, [&](const FpP1& y) {
      const auto qx = coord_quadratic(f, form, FpTriple{ph, y, b2}, 1);
      const auto qz = coord_quadratic(f, form, FpTriple{b1, y, ph}, 3);
      for (const auto& rx : quad_roots_fp(ctx, qx))
        for (const auto& rz : quad_roots_fp(ctx, qz))
          out.push_back(FpTriple{rx, y, rz});
    });
  } else {
    each_p1(ctx, [&](const FpP1& z) {
      const auto qx = coord_quadratic(f, form, FpTriple{ph, b2, z}, 1);
      const auto qy = coord_quadratic(f, form, FpTriple{b1, ph, z}, 2);
      for (const auto& rx : quad_roots_fp(ctx, qx))
        for (const auto& ry : quad_roots_fp(ctx, qy))
          out.push_back(FpTriple{rx, ry, z});
    });
  }
  return out;
}

GenusBoundData genus_bound_data(const WkSurface<FpField>& w,
                                const PrimeFieldCtx& ctx, const FpP1& y0,
                                const FpP1& z0) {
  FpField f{&ctx};
  const auto form = wk_form(f, w);
  const FpP1 ph = FpP1::finite(0);
  GenusBoundData data;
  each_p1(ctx, [&](const FpP1& x) {
    const auto qy = coord_quadratic(f, form, FpTriple{x, ph, z0}, 2);
    const auto qz = coord_quadratic(f, form, FpTriple{x, y0, ph}, 3);
    const int vanishing = (f.is_zero(quad_disc(f, qy)) ? 1 : 0) +
                          (f.is_zero(quad_disc(f, qz)) ? 1 : 0);
    if (vanishing == 1) ++data.A;
    if (vanishing == 2) ++data.B;
  });
  data.bound = -3.0 + static_cast<double>(data.A) +
               1.5 * static_cast<double>(data.B);
  return data;
}

bool c1_singular_flag(const WkSurface<FpField>& w, const PrimeFieldCtx& ctx,
                      const FpP1& y0, const FpP1& z0) {
  FpField f{&ctx};
  if (y0.is_inf || z0.is_inf || f.is_zero(y0.v) || f.is_zero(z0.v))
    return true;
  const auto b = y0.v, c = z0.v;
  const auto b2 = f.mul(b, b), c2 = f.mul(c, c);
  if (f.eq(b2, c2)) return true;
  if (f.eq(f.mul(b2, c2), f.one())) return true;
  // Roots of (2v^2 - kv - 2)(2v^2 - kv + 2)(2v^2 + kv - 2)(2v^2 + kv + 2).
  auto quartic_root = [&](std::uint64_t v) {
    const auto twov2 = f.mul(f.from_int(2), f.mul(v, v));
    const auto kv = f.mul(w.k, v);
    const auto two = f.from_int(2);
    for (const auto& s : {f.sub(f.sub(twov2, kv), two), f.add(f.sub(twov2, kv), two),
                          f.sub(f.add(twov2, kv), two), f.add(f.add(twov2, kv), two)})
      if (f.is_zero(s)) return true;
    return false;
  };
  return quartic_root(b) || quartic_root(c);
}

namespace {

// Shared precomputation for the pairwise fiber-jumping scan.
struct JumpTables {
  std::uint64_t n = 0;               // p + 1 bases per axis
  std::vector<char> solv3;           // (x, y) pairs with a z solution
  std::vector<char> solv2;           // (x, z) pairs with a y solution
  std::vector<char> solv1;           // (y, z) pairs with an x solution
  std::array<std::vector<char>, 3> nonempty;  // per axis, per base
  std::vector<char> connected;       // per base, axis-independent on W_k
};

JumpTables build_jump_tables(const WkSurface<FpField>& w,
                             const PrimeFieldCtx& ctx) {
  FpField f{&ctx};
  const auto form = wk_form(f, w);
  JumpTables t;
  t.n = ctx.p + 1;
  const std::uint64_t n = t.n;
  t.solv3.assign(n * n, 0);
  t.solv2.assign(n * n, 0);
  t.solv1.assign(n * n, 0);
  for (std::uint64_t a = 0; a < n; ++a) {
    const FpP1 pa = p1_from_index(ctx, a);
    for (std::uint64_t b = 0; b < n; ++b) {
      const FpP1 pb = p1_from_index(ctx, b);
      t.solv3[a * n + b] = fibers_meet(f, ctx, form, 1, pa, 2, pb);
      t.solv2[a * n + b] = fibers_meet(f, ctx, form, 1, pa, 3, pb);
      t.solv1[a * n + b] = fibers_meet(f, ctx, form, 2, pa, 3, pb);
    }
  }
  for (auto& v : t.nonempty) v.assign(n, 0);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      if (t.solv3[a * n + b]) t.nonempty[0][a] = t.nonempty[1][b] = 1;
      if (t.solv2[a * n + b]) t.nonempty[2][b] = 1;
    }
  t.connected.assign(n, 0);
  for (const auto& v : pi_connfib(w, ctx))
    t.connected[p1_index(ctx, v)] = 1;
  return t;
}

// Fiber index: axis-major, base ascending with Infinity last.
bool jump_fibers_meet(const JumpTables& t, std::uint64_t fa, std::uint64_t fb) {
  const std::uint64_t ia = fa / t.n, sa = fa % t.n;
  const std::uint64_t ib = fb / t.n, sb = fb % t.n;
  if (ia == ib) return sa == sb && t.nonempty[ia][sa];
  const std::uint64_t lo = std::min(ia, ib), hi = std::max(ia, ib);
  const std::uint64_t slo = ia < ib ? sa : sb, shi = ia < ib ? sb : sa;
  if (lo == 0 && hi == 1) return t.solv3[slo * t.n + shi];
  if (lo == 0 && hi == 2) return t.solv2[slo * t.n + shi];
  return t.solv1[slo * t.n + shi];
}

}  // namespace

FiberJumpingReport verify_fiber_jumping(const WkSurface<FpField>& w,
                                        const PrimeFieldCtx& ctx,
                                        std::size_t sample_pairs,
                                        unsigned jobs) {
  const JumpTables tables = build_jump_tables(w, ctx);
  const std::uint64_t total_fibers = 3 * tables.n;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (sample_pairs == 0) {
    pairs.reserve(total_fibers * (total_fibers + 1) / 2);
    for (std::uint64_t a = 0; a < total_fibers; ++a)
      for (std::uint64_t b = a; b < total_fibers; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(0x6d6b33);
    for (std::size_t i = 0; i < sample_pairs; ++i) {
      std::uint64_t a = rng() % total_fibers;
      std::uint64_t b = rng() % total_fibers;
      if (a > b) std::swap(a, b);
      pairs.emplace_back(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }

  const std::size_t npairs = pairs.size();
  std::vector<char> fail(npairs, 0), restricted_fail(npairs, 0);
  auto scan_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto [fa, fb] = pairs[i];
      bool any = false, conn = false;
      for (std::uint64_t c = 0; c < total_fibers && !conn; ++c) {
        if (!jump_fibers_meet(tables, fa, c) || !jump_fibers_meet(tables, fb, c))
          continue;
        any = true;
        if (tables.connected[c % tables.n]) conn = true;
      }
      if (!any) fail[i] = 1;
      if (!conn) restricted_fail[i] = 1;
    }
  };
  if (jobs <= 1) {
    scan_range(0, npairs);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (npairs + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t lo = std::min<std::size_t>(j * chunk, npairs);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, npairs);
      if (lo < hi) workers.emplace_back(scan_range, lo, hi);
    }
    for (auto& t : workers) t.join();
  }

  FiberJumpingReport report;
  report.pairs_tested = npairs;
  auto fiber_of = [&](std::uint64_t idx) {
    return FpFiberId{static_cast<int>(idx / tables.n) + 1,
                     p1_from_index(ctx, idx % tables.n)};
  };
  for (std::size_t i = 0; i < npairs; ++i) {
    if (fail[i])
      report.failures.push_back(
          {fiber_of(pairs[i].first), fiber_of(pairs[i].second)});
    if (restricted_fail[i])
      report.restricted_failures.push_back(
          {fiber_of(pairs[i].first), fiber_of(pairs[i].second)});
  }
  return report;
}

std::string fiber_jumping_report_json(const FiberJumpingReport& r) {
  std::ostringstream os;
  auto emit_fiber = [&](const FpFiberId& f) {
    os << "{\"axis\":" << f.axis << ",\"base\":\"" << fp_p1_format(f.base)
       << "\"}";
  };
  auto emit_list = [&](const std::vector<FiberPairFailure>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << "{\"f1\":";
      emit_fiber(v[i].f1);
      os << ",\"f2\":";
      emit_fiber(v[i].f2);
      os << "}";
    }
    os << "]";
  };
  os << "{\"pairs_tested\":" << r.pairs_tested << ",\"failures\":";
  emit_list(r.failures);
  os << ",\"restricted_failures\":";
  emit_list(r.restricted_failures);
  os << "}";
  return os.str();
}

}  // namespace mk3
