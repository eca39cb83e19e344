#include <doctest.h>

#include <cmath>

#include "randcomplex/complex.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/sampler.hpp"
#include "randcomplex/topology.hpp"
#include "support/oracle.hpp"

using namespace randcomplex;

namespace {

SimplicialComplex hollow_triangle() {
  return build_complex(3, 2, {Simplex{1, 2}, Simplex{1, 3}, Simplex{2, 3}});
}

SimplicialComplex four_cycle() {
  return build_complex(4, 2, {Simplex{1, 2}, Simplex{2, 3}, Simplex{3, 4}, Simplex{1, 4}});
}

SimplicialComplex path3() { return build_complex(3, 1, {Simplex{1, 2}, Simplex{2, 3}}); }

/// Independent check of the star-cover hypotheses on face sets.
bool oracle_nerve_ok(const oracle::FaceSet& y) {
  const auto vs = oracle::vertices(y);
  std::map<unsigned, oracle::FaceSet> stars;
  for (unsigned v : vs) stars[v] = oracle::closed_star(y, v);
  for (unsigned a : vs) {
    for (unsigned b : vs) {
      if (b <= a) continue;
      const auto ab = oracle::intersect(stars[a], stars[b]);
      if (ab.empty() || oracle::component_count(ab) != 1) return false;
      for (unsigned c : vs) {
        if (c <= b) continue;
        if (oracle::intersect(ab, stars[c]).empty()) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("disjoint sets") {
  DisjointSets ds(5);
  CHECK(ds.set_count() == 5);
  CHECK(ds.unite(0, 1));
  CHECK(ds.unite(3, 4));
  CHECK_FALSE(ds.unite(1, 0));
  CHECK(ds.set_count() == 3);
  CHECK(ds.find(0) == ds.find(1));
  CHECK(ds.find(2) != ds.find(3));
}

TEST_CASE("connected components examples") {
  CHECK(connected_components(full_skeleton(3, 2)).size() == 1);
  const auto two = build_complex(4, 1, {Simplex{1, 2}, Simplex{3, 4}});
  CHECK(connected_components(two) == std::vector<std::vector<Vertex>>{{1, 2}, {3, 4}});
  CHECK(connected_components(SimplicialComplex(4, 1)).empty());
  CHECK(is_connected(path3()));
  CHECK_FALSE(is_connected(build_complex(3, 1, {Simplex{1}, Simplex{2, 3}})));
  CHECK_FALSE(is_connected(SimplicialComplex(3, 1)));
  CHECK(is_connected(build_complex(3, 1, {Simplex{2}})));
}

TEST_CASE("connectivity agrees with breadth-first search") {
  for (unsigned n = 1; n <= 5; ++n) {
    for (int r = 0; r <= std::min(2, static_cast<int>(n) - 1); ++r) {
      for (const auto& faces : oracle::all_complexes(n, r)) {
        const auto y = oracle::to_complex(faces, n, r);
        const auto count = oracle::component_count(faces);
        REQUIRE(connected_components(y).size() == count);
        REQUIRE(is_connected(y) == (count == 1));
      }
    }
  }
}

TEST_CASE("isolated vertices") {
  CHECK(isolated_vertices(build_complex(3, 1, {Simplex{2}})) == std::vector<Vertex>{2});
  CHECK(isolated_vertices(full_skeleton(5, 1)).empty());
  CHECK(isolated_vertices(build_complex(5, 1, {Simplex{1, 2}, Simplex{4}, Simplex{5}})) ==
        std::vector<Vertex>{4, 5});
}

TEST_CASE("isolated subcomplex") {
  const auto two = build_complex(4, 1, {Simplex{1, 2}, Simplex{3, 4}});
  CHECK(is_isolated_subcomplex(two, build_complex(4, 1, {Simplex{1, 2}})));
  CHECK_FALSE(is_isolated_subcomplex(path3(), build_complex(3, 1, {Simplex{2}})));
  // Vertices 1 and 3 of the path, without the edges, still have edges leaving them.
  CHECK_FALSE(is_isolated_subcomplex(path3(), build_complex(3, 1, {Simplex{1}, Simplex{3}})));
  CHECK(is_isolated_subcomplex(path3(), build_complex(3, 1, {Simplex{1}, Simplex{2}, Simplex{3}})));
  CHECK_THROWS_AS(is_isolated_subcomplex(path3(), build_complex(3, 1, {Simplex{1, 3}})), Error);
}

TEST_CASE("edge degrees") {
  CHECK(min_edge_degree(full_skeleton(3, 2)) == 1);
  CHECK(min_edge_degree(hollow_triangle()) == 0);
  CHECK_FALSE(min_edge_degree(build_complex(3, 2, {Simplex{1}, Simplex{2}})).has_value());
  CHECK(min_edge_degree(full_skeleton(6, 2)) == 4);
}

TEST_CASE("common neighbours") {
  const auto star_graph = build_complex(5, 1, {Simplex{1, 2}, Simplex{1, 3}, Simplex{1, 4}, Simplex{1, 5}});
  const std::vector<Vertex> leaves{2, 3};
  CHECK(common_neighbour_exists(star_graph, leaves));
  const std::vector<Vertex> with_centre{1, 2};
  CHECK_FALSE(common_neighbour_exists(star_graph, with_centre));
  const auto full4 = full_skeleton(4, 2);
  for (const std::vector<Vertex>& t : {std::vector<Vertex>{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
    CHECK(common_neighbour_exists(full4, t));
  }
  const std::vector<Vertex> all3{1, 2, 3};
  CHECK_FALSE(common_neighbour_exists(full_skeleton(3, 1), all3));
  const std::vector<Vertex> missing{1, 9};
  CHECK_THROWS_AS(common_neighbour_exists(star_graph, missing), Error);

  CHECK(all_k_tuples_have_common_neighbour(full4, 3).holds);
  const auto tri = all_k_tuples_have_common_neighbour(full_skeleton(3, 1), 3);
  CHECK_FALSE(tri.holds);
  CHECK(tri.witness == std::vector<Vertex>{1, 2, 3});
  CHECK(all_k_tuples_have_common_neighbour(full_skeleton(2, 1), 1).holds);
  CHECK(all_k_tuples_have_common_neighbour(full_skeleton(7, 1), 1).holds);
  CHECK(all_k_tuples_have_common_neighbour(build_complex(5, 1, {Simplex{1, 2}}), 3).holds);
}

TEST_CASE("all k-tuples agree with direct enumeration") {
  for (const auto& faces : oracle::all_complexes(5, 1)) {
    const auto y = oracle::to_complex(faces, 5, 1);
    const auto vs = oracle::vertices(faces);
    for (std::size_t k = 1; k <= 3; ++k) {
      bool expected = true;
      const std::vector<unsigned> v(vs.begin(), vs.end());
      // All k-subsets by bitmask over the present vertices.
      for (std::uint32_t bits = 0; bits < (1u << v.size()); ++bits) {
        if (static_cast<std::size_t>(__builtin_popcount(bits)) != k) continue;
        bool found = false;
        for (unsigned w : v) {
          bool ok = true;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(bits >> i & 1u)) continue;
            if (v[i] == w) ok = false;
            else ok = ok && faces.count({std::min(v[i], w), std::max(v[i], w)});
          }
          found = found || ok;
        }
        expected = expected && found;
      }
      REQUIRE(all_k_tuples_have_common_neighbour(y, k).holds == expected);
    }
  }
}

TEST_CASE("pairwise link intersections") {
  CHECK(pairwise_link_intersections_connected(full_skeleton(4, 2)).holds);
  const auto cycle = pairwise_link_intersections_connected(four_cycle());
  CHECK_FALSE(cycle.holds);
  CHECK(cycle.witness.size() == 2);
  CHECK_FALSE(pairwise_link_intersections_connected(build_complex(2, 1, {Simplex{1, 2}})).holds);
}

TEST_CASE("certificate examples") {
  const auto full4 = certify_simply_connected(full_skeleton(4, 2));
  CHECK(full4.verdict == Verdict::Certified);
  CHECK_FALSE(full4.failed_condition.has_value());

  const auto cycle = certify_simply_connected(four_cycle());
  CHECK(cycle.verdict == Verdict::Unknown);
  CHECK(cycle.failed_condition == FailedCondition::EdgeDegree);

  const auto tri = certify_simply_connected(full_skeleton(3, 2));
  CHECK(tri.verdict == Verdict::Unknown);
  CHECK(tri.failed_condition == FailedCondition::CommonNeighbour);

  const auto empty = certify_simply_connected(SimplicialComplex(4, 2));
  CHECK(empty.failed_condition == FailedCondition::Connectivity);
  CHECK(to_string(Verdict::Certified) == "Certified");
  CHECK(to_string(FailedCondition::LinkIntersections) == "LinkIntersections");
}

TEST_CASE("certificate soundness on every small complex") {
  std::size_t certified = 0;
  for (unsigned n = 1; n <= 5; ++n) {
    for (int r = 0; r <= std::min(3, static_cast<int>(n) - 1); ++r) {
      for (const auto& faces : oracle::all_complexes(n, r)) {
        const auto y = oracle::to_complex(faces, n, r);
        const auto cert = certify_simply_connected(y);
        REQUIRE((cert.verdict == Verdict::Certified) == !cert.failed_condition.has_value());
        const auto audit = audit_star_cover(y);
        if (cert.verdict != Verdict::Certified) continue;
        ++certified;
        REQUIRE(audit.nerve_two_skeleton_complete);
        REQUIRE(audit.star_intersections_connected);
        REQUIRE(oracle_nerve_ok(faces));
      }
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("star-cover audit agrees with the face-set oracle") {
  for (const auto& faces : oracle::all_complexes(5, 2)) {
    const auto y = oracle::to_complex(faces, 5, 2);
    if (y.empty()) continue;
    const auto audit = audit_star_cover(y);
    REQUIRE((audit.nerve_two_skeleton_complete && audit.star_intersections_connected) == oracle_nerve_ok(faces));
  }
}

TEST_CASE("certificate on sampled complexes in the simply connected regime") {
  const SampleConfig config{300, 2, ParameterVector{1.0, 0.6, 0.8}, 123, 40};
  std::size_t certified = 0;
  for_each_sample(config, [&](std::uint64_t, const SimplicialComplex& y) {
    const auto cert = certify_simply_connected(y);
    if (cert.verdict != Verdict::Certified) return;
    ++certified;
    const auto audit = audit_star_cover(y);
    REQUIRE(audit.nerve_two_skeleton_complete);
    REQUIRE(audit.star_intersections_connected);
  });
  CHECK(certified >= 36);
}

TEST_CASE("regime classification") {
  CHECK(regime_classify({{0, 0.2, 0.1}}) == Regime::SimplyConnected);
  CHECK(regime_classify({{0.5, 0.6, 0}}) == Regime::Disconnected);
  CHECK(regime_classify({{0, 0.5, 0.3}}) == Regime::Connected);
  CHECK(regime_classify({{0.5, 0.5, 0.3}}) == Regime::Boundary);
  CHECK_THROWS_AS(regime_classify({{0.5, 0.5}}), Error);
  CHECK_THROWS_AS(regime_classify({{-0.1, 0.5, 0.3}}), Error);
  CHECK(to_string(Regime::SimplyConnected) == "SimplyConnected");
  // SimplyConnected implies Connected over a grid.
  for (double a0 = 0; a0 <= 1.2; a0 += 0.05) {
    for (double a1 = 0; a1 <= 1.2; a1 += 0.05) {
      for (double a2 = 0; a2 <= 1.2; a2 += 0.05) {
        const auto regime = regime_classify({{a0, a1, a2}});
        if (regime == Regime::SimplyConnected) REQUIRE(a0 + a1 < 1);
      }
    }
  }
}

TEST_CASE("dimension") {
  CHECK(full_skeleton(3, 2).dimension() == 2);
  CHECK(path3().dimension() == 1);
  CHECK_FALSE(SimplicialComplex(3, 2).dimension().has_value());
}
