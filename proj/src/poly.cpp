#include "mk3/poly.hpp"

#include <stdexcept>

namespace mk3 {

void zpoly_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zpoly_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

BigInt poly_resultant(const ZPoly& f_in, const ZPoly& g_in) {
  ZPoly f = f_in, g = g_in;
  zpoly_trim(f);
  zpoly_trim(g);
  if (f.empty() || g.empty()) throw std::invalid_argument("resultant of zero polynomial");
  int m = zpoly_deg(f), n = zpoly_deg(g);
  if (m == 0) {
    BigInt r = 1;
    for (int i = 0; i < n; ++i) r *= f[0];
    return r;
  }
  if (n == 0) {
    BigInt r = 1;
    for (int i = 0; i < m; ++i) r *= g[0];
    return r;
  }
  // Sylvester matrix: n rows of f, m rows of g, size (m+n) x (m+n).
  int sz = m + n;
  std::vector<std::vector<BigInt>> a(sz, std::vector<BigInt>(sz, 0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = g[n - i];
  // Bareiss fraction-free elimination; every division below is exact.
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < sz - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < sz; ++r)
        if (a[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int r = k + 1; r < sz; ++r) {
      for (int c = k + 1; c < sz; ++c)
        a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / prev;
      a[r][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[sz - 1][sz - 1];
}

std::string zpoly_format(const ZPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string out;
  for (int d = zpoly_deg(f); d >= 0; --d) {
    const BigInt& c = f[d];
    if (c == 0) continue;
    bool neg = c < 0;
    BigInt ac = neg ? BigInt(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (ac != 1 || d == 0) out += ac.str();
    if (d > 0) {
      if (ac != 1) out += "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mk3
