#include "mk3/autos.hpp"

#include <algorithm>
#include <sstream>

namespace mk3 {

CircGen circ_tau(int i, int j) {
  CircGen g = circ_identity();
  std::swap(g.perm[i - 1], g.perm[j - 1]);
  return g;
}

CircGen circ_eps(int i, int j) {
  CircGen g = circ_identity();
  g.signs[i - 1] = g.signs[j - 1] = -1;
  return g;
}

DeltaGen delta_gen(int i, int j) {
  DeltaGen d{{1, 1, 1}};
  d.pattern[i - 1] = d.pattern[j - 1] = -1;
  return d;
}

CircGen compose_circ(const CircGen& g, const CircGen& h) {
  // (apply g, then h)(P)[i] = h.s[i] * g.s[h.perm[i]] * P[g.perm[h.perm[i]]]
  CircGen r;
  for (int i = 0; i < 3; ++i) {
    r.perm[i] = g.perm[h.perm[i]];
    r.signs[i] = h.signs[i] * g.signs[h.perm[i]];
  }
  return r;
}

bool circ_eq(const CircGen& a, const CircGen& b) {
  return a.perm == b.perm && a.signs == b.signs;
}

std::vector<CircGen> all_circ_elements() {
  std::vector<CircGen> out;
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1})
          if (s0 * s1 * s2 == 1) out.push_back({perm, {s0, s1, s2}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<DeltaGen> all_delta_patterns() {
  return {DeltaGen{{1, 1, 1}}, delta_gen(1, 2), delta_gen(1, 3), delta_gen(2, 3)};
}

std::vector<Generator> standard_generators(bool with_delta) {
  // tau12, tau23 generate the permutations; eps12, eps13 the even signs.
  std::vector<Generator> g{SigmaGen{1},     SigmaGen{2},     SigmaGen{3},
                           circ_tau(1, 2),  circ_tau(2, 3),  circ_eps(1, 2),
                           circ_eps(1, 3)};
  if (with_delta) {
    g.push_back(delta_gen(1, 2));
    g.push_back(delta_gen(1, 3));
  }
  return g;
}

std::vector<Generator> circ_generators() {
  return {circ_tau(1, 2), circ_tau(2, 3), circ_eps(1, 2), circ_eps(1, 3)};
}

std::vector<Generator> sigma_generators() {
  return {SigmaGen{1}, SigmaGen{2}, SigmaGen{3}};
}

std::vector<Generator> circ_delta_generators() {
  auto g = circ_generators();
  g.push_back(delta_gen(1, 2));
  g.push_back(delta_gen(1, 3));
  return g;
}

std::vector<Generator> fibral_generators(int axis) {
  int i = axis % 3 + 1, j = (axis + 1) % 3 + 1;
  if (i > j) std::swap(i, j);
  return {SigmaGen{i}, SigmaGen{j}, circ_tau(i, j), circ_eps(i, j)};
}

namespace {

// Two-index token like s1 / t12 / e12 / d13; indices ascending for pairs.
std::string pair_suffix(const std::array<int, 3>& mask) {
  std::string s;
  for (int i = 0; i < 3; ++i)
    if (mask[i] == -1) s += std::to_string(i + 1);
  return s;
}

}  // namespace

std::string format_generator(const Generator& g) {
  if (auto* s = std::get_if<SigmaGen>(&g)) return "s" + std::to_string(s->axis);
  if (auto* d = std::get_if<DeltaGen>(&g)) return "d" + pair_suffix(d->pattern);
  const CircGen& c = std::get<CircGen>(g);
  bool is_perm_id = c.perm == std::array<int, 3>{0, 1, 2};
  bool is_sign_id = c.signs == std::array<int, 3>{1, 1, 1};
  if (is_perm_id && is_sign_id) return "id";
  if (is_perm_id) return "e" + pair_suffix(c.signs);
  if (is_sign_id) {
    std::array<int, 3> moved{1, 1, 1};
    int nmoved = 0;
    for (int i = 0; i < 3; ++i)
      if (c.perm[i] != i) {
        moved[i] = -1;
        ++nmoved;
      }
    if (nmoved == 2) return "t" + pair_suffix(moved);
  }
  // not a single CLI token: spell as a permutation/sign pair
  std::ostringstream os;
  os << "g[" << c.perm[0] + 1 << c.perm[1] + 1 << c.perm[2] + 1 << ";";
  for (int i = 0; i < 3; ++i) os << (c.signs[i] == 1 ? '+' : '-');
  os << "]";
  return os.str();
}

std::string format_word(const GroupWord& w) {
  std::string s;
  for (const Generator& g : w) {
    if (!s.empty()) s += ' ';
    s += format_generator(g);
  }
  return s;
}

GroupWord parse_word(const std::string& text) {
  GroupWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "id") {
      w.emplace_back(circ_identity());
      continue;
    }
    if (tok.size() == 2 && tok[0] == 's' && tok[1] >= '1' && tok[1] <= '3') {
      w.emplace_back(SigmaGen{tok[1] - '0'});
      continue;
    }
    if (tok.size() == 3 && (tok[0] == 't' || tok[0] == 'e' || tok[0] == 'd')) {
      int i = tok[1] - '0', j = tok[2] - '0';
      if (i >= 1 && j > i && j <= 3) {
        if (tok[0] == 't')
          w.emplace_back(circ_tau(i, j));
        else if (tok[0] == 'e')
          w.emplace_back(circ_eps(i, j));
        else
          w.emplace_back(delta_gen(i, j));
        continue;
      }
    }
    throw ParseError("bad generator token: " + tok);
  }
  return w;
}

}  // namespace mk3
