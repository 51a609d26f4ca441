#include "mk3/golden.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mk3/errors.hpp"

namespace mk3 {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits one CSV line; a double-quoted cell may contain commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (quoted) {
      if (c == '"')
        quoted = false;
      else
        cur.push_back(c);
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV line: " + line);
  cells.push_back(trim(cur));
  return cells;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string(what) + ": not a nonnegative integer: '" + s +
                     "'");
  return std::stoull(s);
}

// Reads a CSV file, checks the header, and hands each data line's cells to
// the row consumer.
template <typename Fn>
void for_each_row(const std::string& path, const std::string& header, Fn fn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open reference table: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != header)
    throw ParseError(path + ": expected header '" + header + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      fn(split_csv(line));
    } catch (const Mk3Error& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<std::size_t> parse_sizes_cell(const std::string& cell) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(cell);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ParseError("empty entry in sizes cell: " + cell);
    std::size_t caret = tok.find('^');
    std::uint64_t mult = 1;
    if (caret != std::string::npos) {
      mult = parse_u64(trim(tok.substr(caret + 1)), "size multiplicity");
      tok = trim(tok.substr(0, caret));
    }
    std::uint64_t val = parse_u64(tok, "orbit size");
    if (val == 0 || mult == 0)
      throw ParseError("zero entry in sizes cell: " + cell);
    sizes.insert(sizes.end(), mult, val);
  }
  if (sizes.empty()) throw ParseError("empty sizes cell");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw ParseError("sizes cell not ascending: " + cell);
  return sizes;
}

GoldenTable load_golden_tables(const std::string& dir) {
  GoldenTable g;

  for_each_row(dir + "/census_reference.csv", "p,k,sizes",
               [&](const std::vector<std::string>& c) {
                 if (c.size() != 3) throw ParseError("expected 3 cells");
                 g.census.push_back({parse_u64(c[0], "p"), parse_u64(c[1], "k"),
                                     parse_sizes_cell(c[2])});
               });

  for_each_row(dir + "/fibral_w1_reference.csv", "p,t,orbits",
               [&](const std::vector<std::string>& c) {
                 if (c.size() != 3) throw ParseError("expected 3 cells");
                 GoldenFibralCell cell;
                 cell.p = parse_u64(c[0], "p");
                 if (c[1] == "inf")
                   cell.t_inf = true;
                 else
                   cell.t = parse_u64(c[1], "t");
                 cell.orbit_count = parse_u64(c[2], "orbits");
                 g.fibral_w1.push_back(cell);
               });

  for_each_row(dir + "/w4_reference.csv", "p,sizes",
               [&](const std::vector<std::string>& c) {
                 if (c.size() != 2) throw ParseError("expected 2 cells");
                 g.w4.push_back(
                     {parse_u64(c[0], "p"), parse_sizes_cell(c[1])});
               });

  for_each_row(dir + "/table5_reference.csv",
               "block,p,k,alpha,beta,gamma,size,note",
               [&](const std::vector<std::string>& c) {
                 if (c.size() != 8) throw ParseError("expected 8 cells");
                 GoldenFamilyRow row;
                 row.block = c[0];
                 row.p = parse_u64(c[1], "p");
                 row.k = parse_u64(c[2], "k");
                 if (!c[3].empty()) row.alpha = parse_u64(c[3], "alpha");
                 if (!c[4].empty()) row.beta = parse_u64(c[4], "beta");
                 if (!c[5].empty()) row.gamma = parse_u64(c[5], "gamma");
                 row.size = parse_u64(c[6], "size");
                 row.note = c[7];
                 g.families.push_back(row);
               });

  return g;
}

const GoldenCensusRow* find_census_row(const GoldenTable& g, std::uint64_t p,
                                       std::uint64_t k) {
  for (const GoldenCensusRow& r : g.census)
    if (r.p == p && r.k == k) return &r;
  return nullptr;
}

}  // namespace mk3
