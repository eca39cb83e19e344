#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "randcomplex/simplex.hpp"

namespace randcomplex {

/// Face and external-face counts f_0..f_r and e_0..e_r.
struct FaceProfile {
  std::vector<std::uint64_t> f;
  std::vector<std::uint64_t> e;

  friend bool operator==(const FaceProfile&, const FaceProfile&) = default;
};

/// A downward-closed set of simplexes of dimension <= r over the labels 1..n,
/// i.e. an element of the space of subcomplexes of the r-skeleton of the full
/// simplex on n vertices.
///
/// Every face is stored explicitly, grouped by dimension and sorted by colex
/// rank, so membership is a binary search on 64-bit keys. Values are immutable
/// once built.
class SimplicialComplex {
 public:
  /// The empty complex over (n, r).
  SimplicialComplex(std::uint32_t n, int r);

  std::uint32_t n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  bool empty() const noexcept { return layers_.front().ranks.empty(); }
  std::optional<int> dimension() const noexcept;

  /// Number of faces of dimension d; zero for d outside [0, r].
  std::size_t count(int d) const noexcept;
  std::size_t total_faces() const noexcept;

  /// Vertex labels of the index-th face of dimension d (colex order).
  std::span<const Vertex> face(int d, std::size_t index) const;
  std::span<const std::uint64_t> ranks(int d) const;
  std::vector<Simplex> faces(int d) const;
  std::vector<Vertex> vertices() const;
  std::vector<Simplex> maximal_faces() const;

  bool contains(std::span<const Vertex> vertices) const;
  bool contains(const Simplex& s) const { return contains(s.view()); }
  bool contains_vertex(Vertex v) const;
  std::optional<std::size_t> index_of(std::span<const Vertex> vertices) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

 private:
  friend class ComplexBuilder;

  struct Layer {
    std::vector<std::uint64_t> ranks;
    std::vector<Vertex> vertices;  // (d + 1) labels per face, same order as ranks
  };

  std::uint32_t n_;
  int r_;
  std::vector<Layer> layers_;
};

/// Accumulates faces and produces a SimplicialComplex. add_face does not close
/// downward; build() verifies closure unless told the caller guarantees it.
class ComplexBuilder {
 public:
  ComplexBuilder(std::uint32_t n, int r);

  void add_face(std::span<const Vertex> vertices);
  void add_face(const Simplex& s) { add_face(s.view()); }
  /// Skips validation; the caller supplies a valid face and its colex rank.
  void add_face_unchecked(std::span<const Vertex> vertices, std::uint64_t rank);
  /// Adds the simplex together with all of its nonempty faces.
  void add_closure(std::span<const Vertex> vertices);
  void add_complex(const SimplicialComplex& other);

  enum class Closure { Verify, Trusted };
  SimplicialComplex build(Closure closure = Closure::Verify) &&;

 private:
  void check(std::span<const Vertex> vertices) const;

  SimplicialComplex complex_;
};

/// Downward closure of the generators over (n, r).
SimplicialComplex build_complex(std::uint32_t n, int r, std::span<const Simplex> generators);
SimplicialComplex build_complex(std::uint32_t n, int r, std::initializer_list<Simplex> generators);

/// The r-skeleton of the full simplex on n vertices.
SimplicialComplex full_skeleton(std::uint32_t n, int r);

/// True iff every facet of the simplex is a face of Y. Vertices have empty
/// boundary, so this is always true for them.
bool boundary_in(const SimplicialComplex& y, std::span<const Vertex> vertices);
bool is_external_face(const SimplicialComplex& y, std::span<const Vertex> vertices);

/// External faces of Y grouped by dimension 0..r.
std::vector<std::vector<Simplex>> external_faces(const SimplicialComplex& y);
FaceProfile face_profile(const SimplicialComplex& y);

/// Checks that every simplex of the r-skeleton missing from Y contains an
/// external face of Y. Exhaustive over the skeleton, so only for small n.
bool complement_is_open_star_union(const SimplicialComplex& y);

SimplicialComplex star(const SimplicialComplex& y, const Simplex& sigma);

/// Link of a face, re-indexed over the compacted ground set {1..n} \ V(sigma).
struct Link {
  SimplicialComplex complex;
  /// parent_label[i] is the label in Y of link vertex i + 1.
  std::vector<Vertex> parent_label;
};
/// Requires dim sigma < r so the link lives in a nonempty-dimension space.
Link link(const SimplicialComplex& y, const Simplex& sigma);

/// Join of sigma0 with L inside L's ground set. The result has cap
/// L.r() + dim sigma0 + 1.
SimplicialComplex join_with_simplex(const Simplex& sigma0, const SimplicialComplex& l);

/// Number of (dim sigma + 1)-faces of Y containing sigma.
std::size_t degree(const SimplicialComplex& y, const Simplex& sigma);

bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b);
/// A is a subcomplex of B iff every external face of B contains an external face of A.
bool external_face_criterion(const SimplicialComplex& a, const SimplicialComplex& b);

/// Y together with the given simplexes; each must have its boundary in Y or
/// among the previously added simplexes.
SimplicialComplex with_faces(const SimplicialComplex& y, std::span<const Simplex> added);
SimplicialComplex intersection(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b);

/// Y intersected with the simplex spanned by every label except v, relabelled
/// over {1..n-1}.
SimplicialComplex delete_vertex(const SimplicialComplex& y, Vertex v);

}  // namespace randcomplex
