#pragma once

// Helpers shared by the library sources; not installed.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "randcomplex/simplex.hpp"

namespace randcomplex::detail {

/// Calls fn(span) for each k-subset of {1..n} in colex order.
template <typename Fn>
void for_each_combination(std::uint32_t n, std::size_t k, Fn&& fn) {
  if (k == 0 || k > n) return;
  std::vector<Vertex> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Vertex>(i + 1);
  while (true) {
    fn(std::span<const Vertex>(c));
    // Colex successor: bump the lowest position that can move.
    std::size_t i = 0;
    while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : n + 1)) ++i;
    if (i == k) return;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<Vertex>(j + 1);
  }
}

/// Calls fn(span) for each nonempty subset of the given sorted vertex list.
template <typename Fn>
void for_each_nonempty_subset(std::span<const Vertex> vertices, Fn&& fn) {
  const std::size_t k = vertices.size();
  std::vector<Vertex> buf;
  buf.reserve(k);
  const std::uint64_t limit = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  for (std::uint64_t mask = 1;; ++mask) {
    buf.clear();
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) buf.push_back(vertices[i]);
    }
    fn(std::span<const Vertex>(buf));
    if (mask == limit) break;
  }
}

/// Sorted union of two strictly increasing vertex lists.
inline void merge_vertices(std::span<const Vertex> a, std::span<const Vertex> b,
                           std::vector<Vertex>& out) {
  out.clear();
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

inline bool disjoint(std::span<const Vertex> a, std::span<const Vertex> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

/// Inserts v into a sorted list (v must be absent).
inline void insert_sorted(std::span<const Vertex> base, Vertex v, std::vector<Vertex>& out) {
  out.assign(base.begin(), base.end());
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
}

}  // namespace randcomplex::detail
