#include "mk3/census.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "mk3/errors.hpp"
#include "mk3/prime_field.hpp"

namespace mk3 {

namespace {

constexpr const char* kCacheVersion = "census-cache-v1";

std::string census_row_line(const CensusRow& row) {
  return std::to_string(row.p) + "," + std::to_string(row.k) + ",\"" +
         format_sizes_csv(row.sizes) + "\"";
}

}  // namespace

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n)
    if (is_prime_u64(n)) ps.push_back(n);
  return ps;
}

RunCache::RunCache(std::string dir) : root_(std::move(dir)) {
  if (!root_.empty())
    std::filesystem::create_directories(std::filesystem::path(root_) /
                                        kCacheVersion);
}

std::string RunCache::dir_from_env() {
  const char* v = std::getenv("MK3_CACHE_DIR");
  return v ? v : "";
}

std::string RunCache::path_for(std::uint64_t p, std::uint64_t k,
                               const std::string& options_tag) const {
  return (std::filesystem::path(root_) / kCacheVersion /
          ("p" + std::to_string(p) + "_k" + std::to_string(k) + "_" +
           options_tag + ".csv"))
      .string();
}

std::optional<CensusRow> RunCache::lookup(std::uint64_t p, std::uint64_t k,
                                          const std::string& options_tag) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(p, k, options_tag));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  // line format: p,k,"s1,s2,..."
  std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
  std::size_t q1 = line.find('"'), q2 = line.rfind('"');
  if (c1 == std::string::npos || c2 == std::string::npos ||
      q1 == std::string::npos || q2 <= q1)
    return std::nullopt;
  CensusRow row;
  try {
    row.p = std::stoull(line.substr(0, c1));
    row.k = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
    row.sizes = parse_sizes_cell(line.substr(q1 + 1, q2 - q1 - 1));
  } catch (const Mk3Error&) {
    return std::nullopt;
  }
  if (row.p != p || row.k != k) return std::nullopt;
  return row;
}

void RunCache::store(const CensusRow& row, const std::string& options_tag) const {
  if (!enabled()) return;
  std::string path = path_for(row.p, row.k, options_tag);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << census_row_line(row) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::string census_options_tag(const CensusOptions& opt) {
  return opt.with_delta ? "delta" : "std";
}

std::vector<CensusRow> census_sweep(const CensusOptions& opt) {
  struct Task {
    std::uint64_t p, k;
  };
  std::vector<Task> tasks;
  for (std::uint64_t p : opt.primes) {
    PrimeFieldCtx ctx = fp_make(p);
    if (opt.only_k) {
      tasks.push_back({p, *opt.only_k % p});
    } else if (opt.all_k) {
      for (std::uint64_t k = 1; k < p; ++k) tasks.push_back({p, k});
    } else {
      for (std::uint64_t k : k_class_representatives(ctx))
        tasks.push_back({p, k});
    }
  }

  RunCache cache(opt.cache_dir);
  const std::string tag = census_options_tag(opt);
  std::vector<CensusRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size();
         i = next.fetch_add(1)) {
      if (opt.resume)
        if (auto hit = cache.lookup(tasks[i].p, tasks[i].k, tag)) {
          rows[i] = *hit;
          continue;
        }
      rows[i] = compute_census_row(tasks[i].p, tasks[i].k, opt.with_delta);
      cache.store(rows[i], tag);
    }
  };

  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string census_rows_csv(const std::vector<CensusRow>& rows) {
  std::string out = "p,k,sizes\n";
  for (const CensusRow& row : rows) out += census_row_line(row) + "\n";
  return out;
}

std::vector<CensusMismatch> census_diff(
    const std::vector<CensusRow>& rows,
    const std::vector<GoldenCensusRow>& golden) {
  std::set<std::uint64_t> swept;
  std::map<std::pair<std::uint64_t, std::uint64_t>, const CensusRow*> by_key;
  for (const CensusRow& r : rows) {
    swept.insert(r.p);
    by_key[{r.p, r.k}] = &r;
  }
  std::vector<CensusMismatch> bad;
  for (const GoldenCensusRow& g : golden) {
    if (!swept.count(g.p)) continue;
    auto it = by_key.find({g.p, g.k});
    if (it == by_key.end()) {
      bad.push_back({g.p, g.k, g.sizes, {}});
    } else if (it->second->sizes != g.sizes) {
      bad.push_back({g.p, g.k, g.sizes, it->second->sizes});
    }
  }
  return bad;
}

}  // namespace mk3
