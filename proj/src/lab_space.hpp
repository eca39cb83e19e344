#pragma once

// Bitmask view of a tiny space: each complex is a 64-bit set over the
// simplexes of the r-skeleton, indexed by dimension then colex rank.

#include <cstdint>
#include <vector>

#include "randcomplex/complex.hpp"

namespace randcomplex::detail {

class MaskSpace {
 public:
  /// Throws GuardExceeded if the skeleton has more than 64 simplexes or the
  /// space has more than `guard` complexes.
  MaskSpace(std::uint32_t n, int r, std::uint64_t guard);

  std::uint32_t n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  std::size_t simplex_count() const noexcept { return simplices_.size(); }
  const std::vector<Vertex>& simplex(std::size_t i) const { return simplices_[i]; }
  int simplex_dim(std::size_t i) const { return static_cast<int>(simplices_[i].size()) - 1; }

  /// Enumerated complexes in canonical order.
  const std::vector<std::uint64_t>& masks() const noexcept { return masks_; }

  SimplicialComplex decode(std::uint64_t mask) const;
  std::uint64_t encode(const SimplicialComplex& y) const;
  /// Bit of the simplex with the given vertices (must be in the skeleton).
  std::uint64_t bit(std::span<const Vertex> vertices) const;

 private:
  std::uint32_t n_;
  int r_;
  std::vector<std::vector<Vertex>> simplices_;
  std::vector<std::size_t> offset_;  // first index of each dimension
  std::vector<std::uint64_t> facets_;
  std::vector<std::uint64_t> masks_;
};

}  // namespace randcomplex::detail
