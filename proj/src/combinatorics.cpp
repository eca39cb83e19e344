#include "randcomplex/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "randcomplex/error.hpp"

namespace randcomplex {

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  using u128 = unsigned __int128;
  // Face ranks hit k <= 3 constantly; those products fit in 128 bits for 32-bit m.
  if (k <= 3 && m <= 0xFFFFFFFFull) {
    u128 v = 1;
    switch (k) {
      case 0: v = 1; break;
      case 1: v = m; break;
      case 2: v = u128(m) * (m - 1) / 2; break;
      default: v = u128(m) * (m - 1) * (m - 2) / 6; break;
    }
    return static_cast<std::uint64_t>(v);
  }
  u128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // result * (m - i) is divisible by (i + 1) at every step.
    result = result * (m - i) / (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      fail(ErrorCode::OutOfRange, "binomial C(" + std::to_string(m) + "," +
                                      std::to_string(k) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

double binomial_real(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0.0;
  k = std::min(k, m - k);
  double result = 1.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * static_cast<double>(m - i) / static_cast<double>(i + 1);
  }
  return result;
}

double log_binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return -std::numeric_limits<double>::infinity();
  const auto lg = [](std::uint64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  return lg(m) - lg(k) - lg(m - k);
}

std::uint64_t colex_rank(std::span<const Vertex> vertices) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    rank += binomial(vertices[j] - 1, j + 1);
  }
  return rank;
}

void require_rankable(std::uint32_t n, int r) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "dimension cap r must be >= 0");
  const std::uint64_t top = std::min<std::uint64_t>(static_cast<std::uint64_t>(r) + 1, n);
  // C(n, k) grows with k up to n / 2, so the largest relevant value is at min(top, n / 2).
  const std::uint64_t k = std::min<std::uint64_t>(top, n / 2);
  try {
    (void)binomial(n, k);
    (void)binomial(n, top);
  } catch (const Error&) {
    fail(ErrorCode::OutOfRange, "space (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                                    ") is too large for 64-bit face ranks");
  }
}

}  // namespace randcomplex
