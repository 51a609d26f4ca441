#pragma once

#include <string>

#include "mk3/exact_field.hpp"

namespace mk3 {

// Parses field descriptor text: `Q`, `Q[x]/(x^3+x^2+x-1)`, `Q(t)`,
// nested as `Q[i]/(i^2+1)(t)`. Throws ParseError on malformed input.
FieldPtr parse_field(const std::string& text);

// Parses an element expression (rational literals, tower generators, + - * /
// ^ with integer exponents, parentheses, juxtaposition as multiplication)
// and evaluates it in the given field.
ExactElem parse_element(const FieldPtr& field, const std::string& text);

}  // namespace mk3
