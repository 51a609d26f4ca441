#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mk3 {

// One row of the bundled orbit-size reference: nontrivial orbit sizes of
// W_k(F_p), ascending.
struct GoldenCensusRow {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::vector<std::size_t> sizes;
};

// One cell of the bundled fibral-count matrix for W_1: number of fibral
// orbits over base t (t_inf = the fiber at infinity).
struct GoldenFibralCell {
  std::uint64_t p = 0;
  bool t_inf = false;
  std::uint64_t t = 0;
  std::size_t orbit_count = 0;
};

// Full nontrivial orbit-size list of W_4(F_p) for p = 1 mod 8.
struct GoldenW4Row {
  std::uint64_t p = 0;
  std::vector<std::size_t> sizes;
};

// One specialization row of the bundled finite-family table. The blocks
// "144", "160", and "288" use different generator columns, so absent cells
// stay unset; `note` flags the exceptional collapses.
struct GoldenFamilyRow {
  std::string block;
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::optional<std::uint64_t> alpha, beta, gamma;
  std::size_t size = 0;
  std::string note;
};

struct GoldenTable {
  std::vector<GoldenCensusRow> census;
  std::vector<GoldenFibralCell> fibral_w1;
  std::vector<GoldenW4Row> w4;
  std::vector<GoldenFamilyRow> families;
};

// Expands a size-list cell to an ascending vector; accepts both plain
// repetition "24,24,48" and exponent shorthand "24^2, 48".
std::vector<std::size_t> parse_sizes_cell(const std::string& cell);

// Loads the four reference CSVs from a directory. Throws ParseError on any
// malformed cell and checks that re-serializing a sizes cell loses nothing.
GoldenTable load_golden_tables(const std::string& dir);

const GoldenCensusRow* find_census_row(const GoldenTable& g, std::uint64_t p,
                                       std::uint64_t k);

}  // namespace mk3
