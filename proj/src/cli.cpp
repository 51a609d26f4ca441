#include "mk3/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mk3/autos.hpp"
#include "mk3/census.hpp"
#include "mk3/char0.hpp"
#include "mk3/errors.hpp"
#include "mk3/fibers.hpp"
#include "mk3/geometry.hpp"
#include "mk3/golden.hpp"
#include "mk3/orbits.hpp"

namespace mk3 {

namespace {

using nlohmann::json;

FpP1 parse_p1_token(const FpField& f, std::string tok) {
  auto strip = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  tok = strip(tok);
  if (tok == "inf") return FpP1::infinity(f);
  if (tok.empty() ||
      tok.find_first_not_of("0123456789-", tok[0] == '-' ? 1 : 0) !=
          std::string::npos)
    throw ParseError("bad coordinate token: '" + tok + "'");
  return FpP1::finite(f.from_int(std::stoll(tok)));
}

FpTriple parse_point_text(const FpField& f, std::string text) {
  std::erase_if(text, [](char c) { return c == '(' || c == ')' || c == ' '; });
  std::vector<std::string> toks;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) toks.push_back(tok);
  if (toks.size() != 3)
    throw ParseError("point text needs three coordinates: '" + text + "'");
  return {parse_p1_token(f, toks[0]), parse_p1_token(f, toks[1]),
          parse_p1_token(f, toks[2])};
}

std::vector<std::uint64_t> parse_primes_spec(const std::string& spec) {
  auto to_u64 = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad primes range: '" + spec + "'");
    return std::stoull(s);
  };
  std::size_t dots = spec.find("..");
  std::uint64_t lo, hi;
  if (dots == std::string::npos) {
    lo = hi = to_u64(spec);
  } else {
    lo = to_u64(spec.substr(0, dots));
    hi = to_u64(spec.substr(dots + 2));
  }
  if (lo > hi) throw ParseError("empty primes range: '" + spec + "'");
  std::vector<std::uint64_t> ps = primes_in_range(lo, hi);
  if (ps.empty()) throw ParseError("no odd primes in range: '" + spec + "'");
  return ps;
}

json sizes_json(const std::vector<std::size_t>& sizes) {
  return json(sizes);
}

json triple_json(const FpTriple& t) {
  return json::array(
      {fp_p1_format(t[0]), fp_p1_format(t[1]), fp_p1_format(t[2])});
}

int run_points(std::uint64_t p, std::uint64_t k, const std::string& format,
               std::ostream& out) {
  PrimeFieldCtx ctx = fp_make(p);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int((long long)k)};
  std::vector<FpTriple> pts = enumerate_points(w, ctx);
  if (format == "json") {
    json j = json::array();
    for (const FpTriple& t : pts) j.push_back(triple_json(t));
    out << j.dump() << "\n";
  } else if (format == "csv") {
    out << "x,y,z\n";
    for (const FpTriple& t : pts)
      out << fp_p1_format(t[0]) << "," << fp_p1_format(t[1]) << ","
          << fp_p1_format(t[2]) << "\n";
  } else {
    for (const FpTriple& t : pts) out << fp_point_format(t) << "\n";
  }
  return 0;
}

int run_orbits(std::uint64_t p, std::uint64_t k, bool with_delta,
               bool sigma_only, bool all_k, const std::string& seed_point,
               const std::string& format, std::ostream& out) {
  PrimeFieldCtx ctx = fp_make(p);
  FpField f{&ctx};
  std::vector<Generator> gens =
      sigma_only ? sigma_generators() : standard_generators(with_delta);

  if (!seed_point.empty()) {
    WkSurface<FpField> w{f.from_int((long long)k)};
    Form222<FpField> form = wk_form(f, w);
    FpTriple seed = parse_point_text(f, seed_point);
    if (!contains(f, form, seed))
      throw NotOnSurfaceError("seed " + fp_point_format(seed) +
                              " does not satisfy the surface equation");
    std::size_t cap = 4 * (p + 1) * (p + 1);
    TripleSet<FpField> orb = orbit_closure(f, form, {seed}, gens, cap);
    if (format == "json") {
      out << json{{"p", p}, {"k", k}, {"seed", fp_point_format(seed)},
                  {"orbit_size", orb.size()}}
                 .dump()
          << "\n";
    } else {
      out << "orbit of " << fp_point_format(seed) << ": " << orb.size()
          << " points\n";
    }
    return 0;
  }

  std::vector<std::uint64_t> ks;
  if (all_k)
    for (std::uint64_t kk = 1; kk < p; ++kk) ks.push_back(kk);
  else
    ks.push_back(k);

  json jrows = json::array();
  for (std::uint64_t kk : ks) {
    WkSurface<FpField> w{f.from_int((long long)kk)};
    FpDecomposition d = orbit_decomposition(w, ctx, gens);
    std::vector<std::size_t> sizes = nontrivial_sizes(d, ctx);
    if (format == "json")
      jrows.push_back({{"p", p}, {"k", kk}, {"sizes", sizes_json(sizes)}});
    else if (format == "csv")
      out << p << "," << kk << ",\"" << format_sizes_csv(sizes) << "\"\n";
    else if (all_k)
      out << "k=" << kk << ": " << format_sizes_shorthand(sizes) << "\n";
    else
      out << format_sizes_shorthand(sizes) << "\n";
  }
  if (format == "json")
    out << (all_k ? jrows : jrows[0]).dump() << "\n";
  return 0;
}

int run_fibral(std::uint64_t p, std::uint64_t k, int axis, bool table,
               const std::string& t_text, const std::string& format,
               std::ostream& out) {
  PrimeFieldCtx ctx = fp_make(p);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int((long long)k)};

  std::vector<FpP1> bases;
  if (table) {
    bases.push_back(FpP1::infinity(f));
    for (std::uint64_t t = 0; t < p; ++t)
      bases.push_back(FpP1::finite(f.from_int((long long)t)));
  } else {
    bases.push_back(parse_p1_token(f, t_text));
  }

  json jrows = json::array();
  if (format == "csv") out << "p,t,orbits\n";
  for (const FpP1& t : bases) {
    FpDecomposition d = fibral_orbit_decomposition(w, ctx, axis, t);
    std::size_t n = d.orbits.size();
    if (format == "json")
      jrows.push_back({{"t", fp_p1_format(t)}, {"orbits", n}});
    else if (format == "csv")
      out << p << "," << fp_p1_format(t) << "," << n << "\n";
    else if (table)
      out << "t=" << fp_p1_format(t) << ": " << n << "\n";
    else
      out << n << "\n";
  }
  if (format == "json")
    out << json{{"p", p}, {"k", k}, {"axis", axis}, {"counts", jrows}}.dump()
        << "\n";
  return 0;
}

int run_cage(std::uint64_t p, std::uint64_t k, bool dot,
             const std::string& format, std::ostream& out) {
  PrimeFieldCtx ctx = fp_make(p);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int((long long)k)};
  CageGraph g = cage_graph(w, ctx);
  if (dot) {
    out << cage_graph_dot(g);
    return 0;
  }
  std::vector<std::vector<std::string>> comps(g.component_count);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    comps[g.component_of[i]].push_back(fp_p1_format(g.vertices[i]));
  if (format == "json") {
    json j{{"p", p},
           {"k", k},
           {"connfib", json::array()},
           {"component_count", g.component_count},
           {"components", comps},
           {"adjacency", json::parse(cage_graph_adjacency_json(g))}};
    for (const FpP1& v : g.vertices) j["connfib"].push_back(fp_p1_format(v));
    out << j.dump() << "\n";
    return 0;
  }
  out << "connected fibers (" << g.vertices.size() << "):";
  for (const FpP1& v : g.vertices) out << " " << fp_p1_format(v);
  out << "\ncomponents: " << g.component_count << "\n";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out << "  component " << c + 1 << ":";
    for (const std::string& v : comps[c]) out << " " << v;
    out << "\n";
  }
  return 0;
}

int run_census(const std::string& primes_spec, std::optional<std::uint64_t> k,
               bool all_k, bool with_delta, unsigned jobs, bool resume,
               const std::string& out_dir, bool diff,
               const std::string& golden_dir, const std::string& cache_dir,
               const std::string& format, std::ostream& out,
               std::ostream& err) {
  CensusOptions opt;
  opt.primes = parse_primes_spec(primes_spec);
  opt.only_k = k;
  opt.all_k = all_k;
  opt.with_delta = with_delta;
  opt.jobs = jobs;
  opt.resume = resume;
  opt.cache_dir = cache_dir.empty() ? RunCache::dir_from_env() : cache_dir;
  std::vector<CensusRow> rows = census_sweep(opt);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::uint64_t p : opt.primes) {
      std::vector<CensusRow> mine;
      for (const CensusRow& r : rows)
        if (r.p == p) mine.push_back(r);
      std::ofstream fout(std::filesystem::path(out_dir) /
                         ("census_p" + std::to_string(p) + ".csv"));
      fout << census_rows_csv(mine);
    }
  }

  if (format == "json") {
    json j = json::array();
    for (const CensusRow& r : rows)
      j.push_back({{"p", r.p}, {"k", r.k}, {"sizes", sizes_json(r.sizes)}});
    out << j.dump() << "\n";
  } else if (format == "csv") {
    out << census_rows_csv(rows);
  } else {
    for (const CensusRow& r : rows)
      out << "p=" << r.p << " k=" << r.k << ": "
          << format_sizes_shorthand(r.sizes) << "\n";
  }

  if (diff) {
    GoldenTable g = load_golden_tables(golden_dir);
    std::vector<CensusMismatch> bad = census_diff(rows, g.census);
    if (!bad.empty()) {
      for (const CensusMismatch& m : bad) {
        err << "mismatch p=" << m.p << " k=" << m.k << ": expected "
            << format_sizes_csv(m.expected) << ", ";
        if (m.found.empty())
          err << "row missing\n";
        else
          err << "found " << format_sizes_csv(m.found) << "\n";
      }
      return 1;
    }
    out << "diff ok: " << rows.size() << " rows checked\n";
  }
  return 0;
}

int run_linkcheck(std::uint64_t p, std::uint64_t k, bool exhaustive,
                  std::size_t sample, bool restricted, unsigned jobs,
                  const std::string& format, std::ostream& out) {
  PrimeFieldCtx ctx = fp_make(p);
  FpField f{&ctx};
  WkSurface<FpField> w{f.from_int((long long)k)};
  FiberJumpingReport rep =
      verify_fiber_jumping(w, ctx, exhaustive ? 0 : sample, jobs);
  if (format == "json") {
    out << fiber_jumping_report_json(rep) << "\n";
  } else {
    out << "pairs tested: " << rep.pairs_tested << "\n";
    out << "failures: " << rep.failures.size() << "\n";
    out << "restricted failures: " << rep.restricted_failures.size() << "\n";
    const auto& shown = restricted ? rep.restricted_failures : rep.failures;
    for (std::size_t i = 0; i < shown.size() && i < 20; ++i)
      out << "  axis " << shown[i].f1.axis << " t="
          << fp_p1_format(shown[i].f1.base) << "  <->  axis "
          << shown[i].f2.axis << " t=" << fp_p1_format(shown[i].f2.base)
          << "\n";
  }
  if (restricted) return rep.restricted_failures.empty() ? 0 : 1;
  // the no-missing-link guarantee only applies beyond q = 100
  if (p > 100 && !rep.failures.empty()) return 1;
  return 0;
}

int run_char0_verify(const std::string& family, const std::string& format,
                     std::ostream& out) {
  std::vector<std::string> names;
  if (family.empty() || family == "all")
    names = family_names();
  else
    names.push_back(family);
  json jrows = json::array();
  for (const std::string& name : names) {
    FamilyReport rep = verify_family(build_family(name));
    if (format == "json") {
      jrows.push_back({{"family", rep.name},
                       {"size", rep.found},
                       {"circ_suborbits", sizes_json(rep.circ_sizes)},
                       {"sigma_suborbits", sizes_json(rep.sigma_sizes)}});
    } else {
      out << rep.name << ": " << rep.found << " points, suborbits "
          << format_sizes_csv(rep.circ_sizes) << ", sheet-swap orbits "
          << format_sizes_csv(rep.sigma_sizes) << "\n";
    }
  }
  if (format == "json") out << jrows.dump() << "\n";
  return 0;
}

int run_char0_cautionary(const std::string& format, std::ostream& out) {
  CautionaryReport rep = cautionary_checks();
  if (format == "json") {
    out << json{{"resultant", rep.resultant.str()},
                {"w8_f53_orbit", rep.w8_f53_orbit},
                {"w2_f23_orbit", rep.w2_f23_orbit},
                {"w13_f71_orbit", rep.w13_f71_orbit},
                {"w13_suborbits", sizes_json(rep.w13_suborbits)},
                {"w13_sigma_spans", rep.w13_sigma_spans}}
               .dump()
        << "\n";
  } else {
    out << "resultant: " << rep.resultant.str() << "\n";
    out << "W_8(F_53) orbit of (16,16,16): " << rep.w8_f53_orbit << "\n";
    out << "W_2(F_23) orbit of (6,11,18): " << rep.w2_f23_orbit << "\n";
    out << "W_13(F_71) orbit of (22,22,-23): " << rep.w13_f71_orbit << "\n";
    out << "  inversion-extended suborbits: "
        << format_sizes_csv(rep.w13_suborbits) << "\n";
    out << "  sheet swaps span the orbit: "
        << (rep.w13_sigma_spans ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_char0_reduce(const std::string& family, std::uint64_t p,
                     const std::vector<std::string>& sets,
                     const std::string& format, std::ostream& out) {
  std::map<std::string, std::uint64_t> asg;
  for (const std::string& s : sets) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("expected name=value, got '" + s + "'");
    std::string val = s.substr(eq + 1);
    if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad residue in '" + s + "'");
    asg[s.substr(0, eq)] = std::stoull(val);
  }
  FiniteOrbitFamily fam = build_family(family);
  ModpReduction red = reduce_family_mod_p(fam, p, asg);
  if (format == "json") {
    json jseeds = json::array();
    for (const FpTriple& t : red.seeds) jseeds.push_back(triple_json(t));
    out << json{{"family", family},
                {"p", red.p},
                {"k", red.k},
                {"orbit_size", red.orbit_size},
                {"seeds", jseeds}}
               .dump()
        << "\n";
  } else {
    out << family << " mod " << red.p << ": k=" << red.k << ", orbit "
        << red.orbit_size << "\n";
    for (const FpTriple& t : red.seeds)
      out << "  " << fp_point_format(t) << "\n";
  }
  return 0;
}

}  // namespace

int mk3_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Orbit engine for Markoff-type K3 surfaces over prime fields"};
  app.require_subcommand(1);
  auto add_format = [](CLI::App* sub, std::string& fmt) {
    sub->add_option("--format", fmt, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->default_val("text");
  };

  std::uint64_t p = 0, k = 1;
  std::string format;

  CLI::App* points = app.add_subcommand("points", "Enumerate W_k(F_p)");
  points->add_option("-p,--prime", p, "Field characteristic")->required();
  points->add_option("-k", k, "Surface parameter")->required();
  std::string points_fmt;
  add_format(points, points_fmt);

  CLI::App* orbits =
      app.add_subcommand("orbits", "Decompose W_k(F_p) into orbits");
  orbits->add_option("-p,--prime", p, "Field characteristic")->required();
  CLI::Option* orbits_k = orbits->add_option("-k", k, "Surface parameter");
  bool with_delta = false, sigma_only = false, all_k = false;
  CLI::Option* opt_delta = orbits->add_flag(
      "--with-delta", with_delta, "Include the inversion involutions");
  CLI::Option* opt_sigma = orbits->add_flag("--sigma-only", sigma_only,
                                            "Use only the sheet swaps");
  CLI::Option* opt_allk =
      orbits->add_flag("--all-k", all_k, "Every k, no twist-class collapsing");
  opt_sigma->excludes(opt_delta);
  opt_allk->excludes(orbits_k);
  std::string seed_point;
  orbits
      ->add_option("--seed-point", seed_point,
                   "Close one point instead, e.g. \"(3,6,11)\" or "
                   "\"(inf,0,1)\"")
      ->excludes(opt_allk);
  std::string orbits_fmt;
  add_format(orbits, orbits_fmt);

  CLI::App* fibral =
      app.add_subcommand("fibral", "Count orbits inside coordinate fibers");
  fibral->add_option("-p,--prime", p, "Field characteristic")->required();
  fibral->add_option("-k", k, "Surface parameter")->required();
  int axis = 1;
  fibral->add_option("--axis", axis, "Projection axis")
      ->check(CLI::Range(1, 3));
  std::string t_text;
  CLI::Option* opt_t =
      fibral->add_option("-t", t_text, "Fiber base, a residue or 'inf'");
  bool fibral_table = false;
  CLI::Option* opt_table = fibral->add_flag("--table", fibral_table,
                                            "All bases: inf, 0, 1, ..., p-1");
  opt_table->excludes(opt_t);
  std::string fibral_fmt;
  add_format(fibral, fibral_fmt);

  CLI::App* cage =
      app.add_subcommand("cage", "Connected fibers and the cage graph");
  cage->add_option("-p,--prime", p, "Field characteristic")->required();
  cage->add_option("-k", k, "Surface parameter")->required();
  bool dot = false;
  cage->add_flag("--dot", dot, "Emit the graph in DOT format");
  std::string cage_fmt;
  add_format(cage, cage_fmt);

  CLI::App* census =
      app.add_subcommand("census", "Sweep orbit decompositions over primes");
  std::string primes_spec;
  census->add_option("--primes", primes_spec, "Prime range a..b or one prime")
      ->required();
  std::optional<std::uint64_t> census_k;
  CLI::Option* census_k_opt =
      census->add_option("-k", census_k, "Restrict to one k");
  bool census_all_k = false, census_delta = false, census_resume = false,
       census_do_diff = false;
  census->add_flag("--all-k", census_all_k, "Every k, no twist-class collapsing")
      ->excludes(census_k_opt);
  census->add_flag("--with-delta", census_delta,
                   "Include the inversion involutions");
  unsigned jobs = 1;
  census->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  census->add_flag("--resume", census_resume, "Reuse cached rows");
  std::string out_dir, golden_dir = "data", cache_dir;
  census->add_option("--out", out_dir, "Write one CSV per prime here");
  census->add_flag("--diff", census_do_diff,
                   "Compare against the bundled reference tables");
  census->add_option("--golden", golden_dir, "Reference table directory");
  census->add_option("--cache-dir", cache_dir,
                     "Row cache directory (default: MK3_CACHE_DIR)");
  std::string census_fmt;
  add_format(census, census_fmt);

  CLI::App* linkcheck =
      app.add_subcommand("linkcheck", "Check the fiber-jumping property");
  linkcheck->add_option("-p,--prime", p, "Field characteristic")->required();
  linkcheck->add_option("-k", k, "Surface parameter")->required();
  bool exhaustive = false;
  std::size_t sample = 0;
  CLI::Option* opt_ex =
      linkcheck->add_flag("--exhaustive", exhaustive, "Test every fiber pair");
  CLI::Option* opt_sample = linkcheck->add_option(
      "--sample", sample, "Test a fixed-seed sample of this many pairs");
  opt_ex->excludes(opt_sample);
  bool restricted = false;
  linkcheck->add_flag("--restricted", restricted,
                      "Exit nonzero when connected fibers fail to link");
  unsigned link_jobs = 1;
  linkcheck->add_option("--jobs", link_jobs, "Worker threads")
      ->check(CLI::Range(1, 256));
  std::string link_fmt;
  add_format(linkcheck, link_fmt);

  CLI::App* char0 =
      app.add_subcommand("char0", "Characteristic-0 finite orbit families");
  char0->require_subcommand(1);
  CLI::App* c0_verify =
      char0->add_subcommand("verify", "Materialize and check families");
  std::string family;
  c0_verify->add_option("--family", family, "One family name, default all");
  std::string c0v_fmt;
  add_format(c0_verify, c0v_fmt);
  CLI::App* c0_caution = char0->add_subcommand(
      "cautionary", "Orbit-size coincidences over special primes");
  std::string c0c_fmt;
  add_format(c0_caution, c0c_fmt);
  CLI::App* c0_reduce =
      char0->add_subcommand("reduce", "Specialize a family to F_p");
  std::string red_family;
  c0_reduce->add_option("--family", red_family, "Family name")->required();
  std::uint64_t red_p = 0;
  c0_reduce->add_option("-p,--prime", red_p, "Field characteristic")
      ->required();
  std::vector<std::string> red_sets;
  c0_reduce->add_option("--set", red_sets,
                        "Generator assignment name=value, repeatable");
  std::string c0r_fmt;
  add_format(c0_reduce, c0r_fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(points))
      return run_points(p, k, points_fmt, out);
    if (app.got_subcommand(orbits)) {
      if (!all_k && orbits_k->count() == 0)
        throw ParseError("orbits needs -k or --all-k");
      return run_orbits(p, k, with_delta, sigma_only, all_k, seed_point,
                        orbits_fmt, out);
    }
    if (app.got_subcommand(fibral)) {
      if (!fibral_table && opt_t->count() == 0)
        throw ParseError("fibral needs -t or --table");
      return run_fibral(p, k, axis, fibral_table, t_text, fibral_fmt, out);
    }
    if (app.got_subcommand(cage)) return run_cage(p, k, dot, cage_fmt, out);
    if (app.got_subcommand(census))
      return run_census(primes_spec, census_k, census_all_k, census_delta,
                        jobs, census_resume, out_dir, census_do_diff,
                        golden_dir, cache_dir, census_fmt, out, err);
    if (app.got_subcommand(linkcheck)) {
      if (!exhaustive && opt_sample->count() == 0)
        throw ParseError("linkcheck needs --exhaustive or --sample");
      return run_linkcheck(p, k, exhaustive, sample, restricted, link_jobs,
                           link_fmt, out);
    }
    if (app.got_subcommand(char0)) {
      if (char0->got_subcommand(c0_verify))
        return run_char0_verify(family, c0v_fmt, out);
      if (char0->got_subcommand(c0_caution))
        return run_char0_cautionary(c0c_fmt, out);
      if (char0->got_subcommand(c0_reduce))
        return run_char0_reduce(red_family, red_p, red_sets, c0r_fmt, out);
    }
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const SizeMismatchError& e) {
    err << "mismatch: " << e.what() << "\n";
    return 1;
  } catch (const RelationFailureError& e) {
    err << "mismatch: " << e.what() << "\n";
    return 1;
  } catch (const CheckFailureError& e) {
    err << "mismatch: " << e.what() << "\n";
    return 1;
  } catch (const Mk3Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mk3
