#pragma once

#include <cstdint>
#include <span>

#include "randcomplex/simplex.hpp"

namespace randcomplex {

/// Exact binomial coefficient; throws OutOfRange if the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

/// Binomial coefficient as a double (may be inexact for huge values, never throws).
double binomial_real(std::uint64_t m, std::uint64_t k);

/// log C(m, k) via lgamma.
double log_binomial(std::uint64_t m, std::uint64_t k);

/// Colexicographic rank of a strictly increasing 1-based vertex list among all
/// simplexes of the same dimension: sum_j C(v_j - 1, j + 1).
std::uint64_t colex_rank(std::span<const Vertex> vertices);

/// Checks that every simplex of dimension <= r over n labels has a 64-bit rank.
void require_rankable(std::uint32_t n, int r);

}  // namespace randcomplex
