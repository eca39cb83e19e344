#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "randcomplex/complex.hpp"

namespace randcomplex {

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size);

  std::size_t find(std::size_t x);
  /// Returns true if the two elements were in different sets.
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_count() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

/// Components of the 1-skeleton; each sorted, ordered by smallest vertex.
/// The empty complex has no components.
std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& y);
/// Exactly one component; false for the empty complex.
bool is_connected(const SimplicialComplex& y);
std::vector<Vertex> isolated_vertices(const SimplicialComplex& y);
/// S (a subcomplex of Y) is a union of components of Y: no edge of Y joins
/// V(S) to a vertex outside it.
bool is_isolated_subcomplex(const SimplicialComplex& y, const SimplicialComplex& s);

/// Minimum number of triangles on an edge; nullopt when Y has no edges.
std::optional<std::size_t> min_edge_degree(const SimplicialComplex& y);
/// Some vertex outside the tuple is adjacent to every tuple member.
bool common_neighbour_exists(const SimplicialComplex& y, std::span<const Vertex> tuple);

struct TupleCheck {
  bool holds = true;
  std::vector<Vertex> witness;  // a failing tuple when !holds
};
/// Every k-subset of V(Y) has a common neighbour (vacuous with fewer than k vertices).
TupleCheck all_k_tuples_have_common_neighbour(const SimplicialComplex& y, std::size_t k);

struct PairCheck {
  bool holds = true;
  std::vector<Vertex> witness;  // the failing pair when !holds
};
/// For every pair of vertices i < j of Y, lk(i) and lk(j) intersect in a
/// nonempty connected complex.
PairCheck pairwise_link_intersections_connected(const SimplicialComplex& y);

enum class Verdict { Certified, Unknown };
enum class FailedCondition { Connectivity, EdgeDegree, CommonNeighbour, LinkIntersections };

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  std::optional<FailedCondition> failed_condition;
  std::vector<Vertex> witness;
};

/// Sufficient test for simple connectivity through the vertex-star cover:
/// Y is connected, every edge lies in a triangle, every three vertices have a
/// common neighbour, and every two vertex links meet in a nonempty connected
/// complex. Never claims that Y is not simply connected.
Certificate certify_simply_connected(const SimplicialComplex& y);

std::string_view to_string(Verdict v);
std::string_view to_string(FailedCondition c);

/// Direct check of the nerve hypotheses for the cover of Y by closed vertex
/// stars: every three stars meet, and every nonempty pairwise intersection of
/// stars is connected. Built from the face sets of Y without using the link
/// decomposition, so it can audit certify_simply_connected.
struct NerveAudit {
  bool nerve_two_skeleton_complete = true;
  bool star_intersections_connected = true;
  std::vector<Vertex> witness;
};
NerveAudit audit_star_cover(const SimplicialComplex& y);

enum class Regime { SimplyConnected, Connected, Disconnected, Boundary };

/// Exponents alpha_i with p_i = n^{-alpha_i}; at least alpha_0..alpha_2.
struct RegimePoint {
  std::vector<double> alpha;
};

/// SimplyConnected if a0 + 3 a1 + 2 a2 < 1, else Connected / Disconnected /
/// Boundary according to a0 + a1 <, >, = 1.
Regime regime_classify(const RegimePoint& point);
std::string_view to_string(Regime regime);

}  // namespace randcomplex
