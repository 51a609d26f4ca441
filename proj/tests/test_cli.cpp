#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mk3/census.hpp"
#include "mk3/cli.hpp"
#include "mk3/errors.hpp"
#include "mk3/golden.hpp"

using namespace mk3;

namespace {

const std::string kDataDir = MK3_SOURCE_DIR "/data";

const GoldenTable& golden() {
  static const GoldenTable g = load_golden_tables(kDataDir);
  return g;
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mk3");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = mk3_main((int)argv.size(), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

// Fresh directory under the system temp root, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::mt19937_64 rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() /
           ("mk3test-" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sizes cells parse both plain and exponent shorthand") {
  CHECK(parse_sizes_cell("4") == std::vector<std::size_t>{4});
  CHECK(parse_sizes_cell("24,24,48,3456") ==
        std::vector<std::size_t>{24, 24, 48, 3456});
  CHECK(parse_sizes_cell("24^2, 48, 3456") ==
        std::vector<std::size_t>{24, 24, 48, 3456});
  CHECK(parse_sizes_cell(" 4 , 48^3 ") ==
        std::vector<std::size_t>{4, 48, 48, 48});
  CHECK_THROWS_AS(parse_sizes_cell(""), ParseError);
  CHECK_THROWS_AS(parse_sizes_cell("24,"), ParseError);
  CHECK_THROWS_AS(parse_sizes_cell("48,24"), ParseError);
  CHECK_THROWS_AS(parse_sizes_cell("24^0"), ParseError);
  CHECK_THROWS_AS(parse_sizes_cell("x"), ParseError);
}

TEST_CASE("bundled reference tables load completely") {
  const GoldenTable& g = golden();
  CHECK(g.census.size() == 575);
  CHECK(g.fibral_w1.size() == 244);
  CHECK(g.w4.size() == 6);
  CHECK(g.families.size() == 26);

  const GoldenCensusRow* row = find_census_row(g, 53, 1);
  REQUIRE(row != nullptr);
  CHECK(row->sizes == std::vector<std::size_t>{24, 24, 48, 3456});
  CHECK(find_census_row(g, 4, 1) == nullptr);

  bool saw_inf17 = false;
  for (const GoldenFibralCell& c : g.fibral_w1)
    if (c.p == 17 && c.t_inf) {
      saw_inf17 = true;
      CHECK(c.orbit_count == 6);
    }
  CHECK(saw_inf17);

  for (const GoldenW4Row& r : g.w4)
    if (r.p == 113) {
      REQUIRE(r.sizes.size() >= 2);
      CHECK(r.sizes[r.sizes.size() - 2] == 6656);
      CHECK(r.sizes.back() == 7488);
    }

  std::size_t by_block[3] = {0, 0, 0};
  for (const GoldenFamilyRow& r : g.families) {
    if (r.block == "144") {
      ++by_block[0];
      CHECK(r.alpha.has_value());
      CHECK(r.beta.has_value());
      CHECK_FALSE(r.gamma.has_value());
    } else if (r.block == "160") {
      ++by_block[1];
      CHECK_FALSE(r.alpha.has_value());
    } else if (r.block == "288") {
      ++by_block[2];
      CHECK(r.size == (r.note.empty() ? 288u : 144u));
    }
  }
  CHECK(by_block[0] == 8);
  CHECK(by_block[1] == 8);
  CHECK(by_block[2] == 10);
}

TEST_CASE("run cache stores and replays rows") {
  TempDir tmp;
  RunCache cache(tmp.path.string());
  REQUIRE(cache.enabled());
  CensusRow row{53, 1, {24, 24, 48, 3456}};
  CHECK_FALSE(cache.lookup(53, 1, "std").has_value());
  cache.store(row, "std");
  auto hit = cache.lookup(53, 1, "std");
  REQUIRE(hit.has_value());
  CHECK(*hit == row);
  // the options tag is part of the key
  CHECK_FALSE(cache.lookup(53, 1, "delta").has_value());
  CHECK_FALSE(cache.lookup(53, 2, "std").has_value());

  RunCache disabled;
  CHECK_FALSE(disabled.enabled());
  disabled.store(row, "std");
  CHECK_FALSE(disabled.lookup(53, 1, "std").has_value());
}

TEST_CASE("census sweep matches the reference rows and scheduling") {
  CensusOptions opt;
  opt.primes = {3, 5, 7, 11, 13};
  std::vector<CensusRow> rows = census_sweep(opt);
  CHECK(census_diff(rows, golden().census).empty());

  opt.jobs = 4;
  CHECK(census_sweep(opt) == rows);

  // a tampered golden row is reported with both sides
  std::vector<GoldenCensusRow> tampered = golden().census;
  for (GoldenCensusRow& g : tampered)
    if (g.p == 7 && g.k == 1) g.sizes = {63};
  std::vector<CensusMismatch> bad = census_diff(rows, tampered);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].p == 7);
  CHECK(bad[0].expected == std::vector<std::size_t>{63});
  CHECK(bad[0].found == std::vector<std::size_t>{64});

  // rows for unswept primes are ignored
  CHECK(census_diff(rows, {{101, 1, {1}}}).empty());
}

TEST_CASE("census resume reads the cache instead of recomputing") {
  TempDir tmp;
  CensusOptions opt;
  opt.primes = {5};
  opt.only_k = 1;
  opt.cache_dir = tmp.path.string();

  RunCache cache(opt.cache_dir);
  CensusRow fake{5, 1, {999}};
  cache.store(fake, census_options_tag(opt));

  opt.resume = true;
  std::vector<CensusRow> rows = census_sweep(opt);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == fake);  // proves the cached row was used verbatim

  opt.resume = false;
  rows = census_sweep(opt);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].sizes == std::vector<std::size_t>{4, 48});
  // the fresh run overwrote the poisoned entry
  auto hit = cache.lookup(5, 1, census_options_tag(opt));
  REQUIRE(hit.has_value());
  CHECK(hit->sizes == std::vector<std::size_t>{4, 48});
}

TEST_CASE("census csv serialization") {
  std::vector<CensusRow> rows{{3, 1, {4}}, {53, 1, {24, 24, 48, 3456}}};
  CHECK(census_rows_csv(rows) ==
        "p,k,sizes\n3,1,\"4\"\n53,1,\"24,24,48,3456\"\n");
}

TEST_CASE("cli points and orbits") {
  CliResult r = run_cli({"points", "-p", "3", "-k", "1"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 8);

  r = run_cli({"orbits", "-p", "53", "-k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "24^2, 48, 3456\n");

  r = run_cli({"orbits", "-p", "53", "-k", "1", "--format", "csv"});
  CHECK(r.out == "53,1,\"24,24,48,3456\"\n");

  r = run_cli({"orbits", "-p", "47", "-k", "11", "--seed-point", "(3,6,11)"});
  CHECK(r.code == 0);
  CHECK(r.out == "orbit of (3,6,11): 288 points\n");

  r = run_cli({"orbits", "-p", "47", "-k", "11", "--seed-point", "(1,1,1)"});
  CHECK(r.code == 2);
  CHECK(r.err.find("surface") != std::string::npos);

  r = run_cli({"orbits", "-p", "7", "--all-k"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 9) == "k=1: 64\nk");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
}

TEST_CASE("cli fibral matches the reference matrix at p=13") {
  CliResult r = run_cli({"fibral", "-p", "13", "-k", "1", "--table",
                         "--format", "csv"});
  CHECK(r.code == 0);
  std::ostringstream want;
  want << "p,t,orbits\n";
  for (const GoldenFibralCell& c : golden().fibral_w1)
    if (c.p == 13)
      want << "13," << (c.t_inf ? std::string("inf") : std::to_string(c.t))
           << "," << c.orbit_count << "\n";
  CHECK(r.out == want.str());

  r = run_cli({"fibral", "-p", "5", "-k", "1", "-t", "0"});
  CHECK(r.out == "3\n");
  r = run_cli({"fibral", "-p", "19", "-k", "1", "-t", "16"});
  CHECK(r.out == "0\n");
  r = run_cli({"fibral", "-p", "5", "-k", "1"});
  CHECK(r.code == 2);  // needs -t or --table
}

TEST_CASE("cli cage output") {
  CliResult r = run_cli({"cage", "-p", "53", "-k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("connected fibers (14):") != std::string::npos);
  CHECK(r.out.find("components: 2") != std::string::npos);
  CHECK(r.out.find(" 2 6 20 26 27 33 47 51\n") != std::string::npos);
  CHECK(r.out.find(" 4 13 24 29 40 49\n") != std::string::npos);

  r = run_cli({"cage", "-p", "53", "-k", "1", "--dot"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 11) == "graph cage ");
  CHECK(std::count(r.out.begin(), r.out.end(), '"') >= 28);
}

TEST_CASE("cli census diff and output files") {
  TempDir tmp;
  CliResult r = run_cli({"census", "--primes", "3..13", "--jobs", "2",
                         "--diff", "--golden", kDataDir, "--out",
                         (tmp.path / "out").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("diff ok: 13 rows checked") != std::string::npos);
  std::ifstream csv(tmp.path / "out" / "census_p7.csv");
  REQUIRE(csv.good());
  std::stringstream buf;
  buf << csv.rdbuf();
  CHECK(buf.str() == "p,k,sizes\n7,1,\"64\"\n7,2,\"24\"\n7,3,\"4\"\n");

  r = run_cli({"census", "--primes", "9..10"});
  CHECK(r.code == 2);  // no odd primes in range
}

TEST_CASE("cli linkcheck exit codes") {
  CliResult r = run_cli({"linkcheck", "-p", "53", "-k", "1", "--exhaustive"});
  CHECK(r.code == 0);
  CHECK(r.out.find("failures: 0\n") != std::string::npos);

  r = run_cli({"linkcheck", "-p", "53", "-k", "1", "--exhaustive",
               "--restricted"});
  CHECK(r.code == 1);  // the split cage leaves unlinked connected fibers

  r = run_cli({"linkcheck", "-p", "7", "-k", "1", "--exhaustive"});
  CHECK(r.code == 0);  // below the size hypothesis: report only
  CHECK(r.out.find("pairs tested: 300") != std::string::npos);

  r = run_cli({"linkcheck", "-p", "7", "-k", "1"});
  CHECK(r.code == 2);  // needs --exhaustive or --sample
}

TEST_CASE("cli char0 commands") {
  CliResult r = run_cli({"char0", "verify", "--family", "size96"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "size96: 96 points, suborbits 24,24,12,12,12,12, "
        "sheet-swap orbits 32,32,32\n");

  r = run_cli({"char0", "reduce", "--family", "size144", "-p", "11", "--set",
               "a=4", "--set", "b=5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("k=1, orbit 144") != std::string::npos);

  r = run_cli({"char0", "verify", "--family", "size999"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown finite-orbit family") != std::string::npos);

  r = run_cli({"char0", "reduce", "--family", "size64", "-p", "11", "--set",
               "b=3"});
  CHECK(r.code == 2);  // 3 is not a root of the cubic mod 11
}

TEST_CASE("cli usage errors exit with code 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"points", "-p", "4", "-k", "1"}).code == 2);
  CHECK(run_cli({"points", "-p", "4", "-k", "1"}).err.find("not prime") !=
        std::string::npos);
  CHECK(run_cli({"orbits", "-p", "7"}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
}
