#pragma once

#include <string>
#include <vector>

#include "mk3/bigint.hpp"

namespace mk3 {

// Dense univariate polynomials with exact integer coefficients,
// index = degree, trailing zeros trimmed (empty vector = zero polynomial).
using ZPoly = std::vector<BigInt>;

void zpoly_trim(ZPoly& f);
int zpoly_deg(const ZPoly& f);  // -1 for the zero polynomial

// Resultant under the convention Res(f,g) = lc(f)^deg(g) * prod g(root_i(f)),
// computed as the Sylvester determinant by fraction-free elimination.
BigInt poly_resultant(const ZPoly& f, const ZPoly& g);

std::string zpoly_format(const ZPoly& f, const std::string& var);

}  // namespace mk3
