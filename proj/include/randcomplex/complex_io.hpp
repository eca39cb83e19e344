#pragma once

#include <string>
#include <string_view>

#include "randcomplex/complex.hpp"

namespace randcomplex {

/// Canonical encoding {"n":..,"r":..,"maximal_faces":[[..],..]} with maximal
/// faces sorted lexicographically. Compact, no whitespace.
std::string to_canonical_json(const SimplicialComplex& y);

/// Decodes the canonical encoding (any face order is accepted) and rebuilds
/// the complex by downward closure. Throws ParseError on malformed input.
SimplicialComplex complex_from_json(std::string_view text);

}  // namespace randcomplex
