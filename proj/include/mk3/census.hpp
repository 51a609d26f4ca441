#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mk3/golden.hpp"
#include "mk3/orbits.hpp"

namespace mk3 {

// Returns the primes in [lo, hi], excluding 2 (characteristic 2 is out of
// scope for the surface arithmetic).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Persistent store of census rows keyed by (format version, p, k, group
// options). A hit deserializes to exactly the row the computation produced,
// so cached and fresh sweeps emit byte-identical CSVs.
class RunCache {
 public:
  RunCache() = default;  // disabled
  explicit RunCache(std::string dir);

  bool enabled() const { return !root_.empty(); }

  // Cache directory from MK3_CACHE_DIR, or empty when unset.
  static std::string dir_from_env();

  std::optional<CensusRow> lookup(std::uint64_t p, std::uint64_t k,
                                  const std::string& options_tag) const;
  void store(const CensusRow& row, const std::string& options_tag) const;

 private:
  std::string path_for(std::uint64_t p, std::uint64_t k,
                       const std::string& options_tag) const;
  std::string root_;
};

struct CensusOptions {
  std::vector<std::uint64_t> primes;
  // Exactly one k, every k in F_p*, or (default) one per twist class.
  std::optional<std::uint64_t> only_k;
  bool all_k = false;
  bool with_delta = false;
  unsigned jobs = 1;
  std::string cache_dir;  // empty = no cache
  bool resume = false;    // reuse cached rows instead of recomputing
};

std::string census_options_tag(const CensusOptions& opt);

// Computes every (p, k) row for the option set. Tasks run on `jobs` threads;
// rows come back in (p, k) task order regardless of scheduling.
std::vector<CensusRow> census_sweep(const CensusOptions& opt);

// CSV serialization, one header plus one row per (p, k).
std::string census_rows_csv(const std::vector<CensusRow>& rows);

struct CensusMismatch {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::vector<std::size_t> expected;  // golden sizes
  std::vector<std::size_t> found;     // computed sizes; empty = row missing
};

// Compares computed rows against every golden row whose prime was swept.
// Golden rows for unswept primes and computed rows absent from the golden
// data are both ignored.
std::vector<CensusMismatch> census_diff(
    const std::vector<CensusRow>& rows,
    const std::vector<GoldenCensusRow>& golden);

}  // namespace mk3
