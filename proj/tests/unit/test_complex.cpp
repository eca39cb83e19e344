#include <doctest.h>

#include "randcomplex/combinatorics.hpp"
#include "randcomplex/complex.hpp"
#include "randcomplex/complex_io.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/sampler.hpp"
#include "support/oracle.hpp"

using namespace randcomplex;

namespace {

std::vector<std::uint64_t> f_of(const SimplicialComplex& y) { return face_profile(y).f; }
std::vector<std::uint64_t> e_of(const SimplicialComplex& y) { return face_profile(y).e; }

SimplicialComplex hollow_triangle() {
  return build_complex(3, 2, {Simplex{1, 2}, Simplex{1, 3}, Simplex{2, 3}});
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("simplex validation") {
  CHECK(Simplex{1, 4, 7}.dim() == 2);
  CHECK_THROWS_AS(Simplex({2, 1}), Error);
  CHECK_THROWS_AS(Simplex({0, 1}), Error);
  CHECK_THROWS_AS(Simplex({1, 1}), Error);
  CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), Error);
  CHECK(Simplex{1, 3}.is_face_of(Simplex{1, 2, 3}));
  CHECK_FALSE(Simplex{1, 4}.is_face_of(Simplex{1, 2, 3}));
}

TEST_CASE("colex rank enumerates each dimension densely") {
  for (std::uint32_t n = 1; n <= 7; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::set<std::uint64_t> ranks;
      for (const auto& f : oracle::all_simplices(n, static_cast<int>(k) - 1)) {
        if (f.size() != k) continue;
        const std::vector<Vertex> v(f.begin(), f.end());
        ranks.insert(colex_rank(v));
      }
      CHECK(ranks.size() == binomial(n, k));
      CHECK(*ranks.rbegin() == binomial(n, k) - 1);
    }
  }
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(67, 33) == 14226520737620288370ull);
  CHECK_THROWS_AS(binomial(68, 34), Error);
}

TEST_CASE("build_complex") {
  auto tri = build_complex(3, 2, {Simplex{1, 2, 3}});
  CHECK(f_of(tri) == std::vector<std::uint64_t>{3, 3, 1});
  auto none = build_complex(2, 1, std::span<const Simplex>{});
  CHECK(none.empty());
  CHECK(f_of(none) == std::vector<std::uint64_t>{0, 0});
  auto mixed = build_complex(4, 2, {Simplex{1, 2}, Simplex{3}});
  CHECK(f_of(mixed) == std::vector<std::uint64_t>{3, 1, 0});

  CHECK(code_of([] { build_complex(3, 2, {Simplex{1, 4}}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_complex(4, 1, {Simplex{1, 2, 3}}); }) == ErrorCode::InvalidArgument);

  // Idempotent: rebuilding from the full face set gives the same complex.
  std::vector<Simplex> all;
  for (int d = 0; d <= tri.r(); ++d) {
    for (auto& s : tri.faces(d)) all.push_back(s);
  }
  CHECK(build_complex(3, 2, all) == tri);
}

TEST_CASE("builder rejects sets that are not closed") {
  ComplexBuilder b(3, 1);
  b.add_face(Simplex{1, 2});
  CHECK_THROWS_AS(std::move(b).build(), Error);
}

TEST_CASE("face_profile examples") {
  auto two = build_complex(2, 1, {Simplex{1}, Simplex{2}});
  CHECK(e_of(two) == std::vector<std::uint64_t>{0, 1});
  auto hollow = hollow_triangle();
  CHECK(f_of(hollow) == std::vector<std::uint64_t>{3, 3, 0});
  CHECK(e_of(hollow) == std::vector<std::uint64_t>{0, 0, 1});
  auto empty = SimplicialComplex(5, 3);
  CHECK(e_of(empty) == std::vector<std::uint64_t>{5, 0, 0, 0});
}

TEST_CASE("face_profile and closure against the brute-force oracle") {
  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r < static_cast<int>(n); ++r) {
      for (const auto& faces : oracle::brute_force_space(n, r)) {
        const auto y = oracle::to_complex(faces, n, r);
        CHECK(oracle::faces_of(y) == faces);
        const auto expected = oracle::profile(faces, n, r);
        const auto got = face_profile(y);
        CHECK(got.f == expected.f);
        CHECK(got.e == expected.e);
        CHECK(got.e[0] + got.f[0] == n);
        for (int i = 1; i <= r; ++i) CHECK(got.f[i] + got.e[i] <= binomial(n, i + 1));
        CHECK(complement_is_open_star_union(y));
      }
    }
  }
}

TEST_CASE("enumerate_space matches the brute-force oracle") {
  CHECK(enumerate_space(1, 0).size() == 2);
  CHECK(enumerate_space(2, 1).size() == 5);
  // Sum over vertex subsets S of 2^C(|S|,2): 1 + 3 + 3*2 + 8.
  CHECK(enumerate_space(3, 1).size() == 18);
  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r < static_cast<int>(n); ++r) {
      const auto space = enumerate_space(n, r);
      std::set<oracle::FaceSet> got;
      for (const auto& y : space) got.insert(oracle::faces_of(y));
      const auto expected = oracle::brute_force_space(n, r);
      CHECK(got.size() == space.size());
      CHECK(got == std::set<oracle::FaceSet>(expected.begin(), expected.end()));
    }
  }
  CHECK(enumerate_space(5, 1).size() == oracle::brute_force_space(5, 1).size());
  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r < static_cast<int>(n); ++r) {
      const auto dfs = oracle::all_complexes(n, r);
      const auto brute = oracle::brute_force_space(n, r);
      CHECK(dfs.size() == brute.size());
      CHECK(std::set<oracle::FaceSet>(dfs.begin(), dfs.end()) ==
            std::set<oracle::FaceSet>(brute.begin(), brute.end()));
    }
  }
  CHECK(enumerate_space(5, 3).size() == oracle::all_complexes(5, 3).size());
}

TEST_CASE("enumeration guard") {
  CHECK(code_of([] { enumerate_space(4, 3, 100); }) == ErrorCode::GuardExceeded);
  CHECK(enumerate_space(4, 3, 167).size() == 167);
  CHECK(code_of([] { enumerate_space(12, 1); }) == ErrorCode::GuardExceeded);
}

TEST_CASE("complement is a union of open stars") {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (int r = 0; r <= std::min(3, static_cast<int>(n) - 1); ++r) {
      for (const auto& y : enumerate_space(n, r)) REQUIRE(complement_is_open_star_union(y));
    }
  }
  for (std::uint32_t n : {4u, 5u}) {
    SampleConfig config{n, 3, ParameterVector{0.8, 0.6, 0.7, 0.5}, 11, 5000};
    for_each_sample(config, [](std::uint64_t, const SimplicialComplex& y) {
      REQUIRE(complement_is_open_star_union(y));
    });
  }
  CHECK(complement_is_open_star_union(hollow_triangle()));
  CHECK(complement_is_open_star_union(SimplicialComplex(3, 2)));
}

TEST_CASE("star") {
  auto full = full_skeleton(3, 2);
  CHECK(star(full, Simplex{1}) == full);
  auto path = build_complex(3, 1, {Simplex{1, 2}, Simplex{2, 3}});
  CHECK(star(path, Simplex{3}) == build_complex(3, 1, {Simplex{2, 3}}));
  auto two_edges = build_complex(4, 1, {Simplex{1, 2}, Simplex{3, 4}});
  CHECK(star(two_edges, Simplex{1, 2}) == build_complex(4, 1, {Simplex{1, 2}}));
  CHECK(code_of([&] { star(path, Simplex{1, 3}); }) == ErrorCode::NotAFace);
}

TEST_CASE("link") {
  auto full = full_skeleton(4, 2);
  auto lk = link(full, Simplex{1});
  CHECK(lk.complex == full_skeleton(3, 1));
  CHECK(lk.parent_label == std::vector<Vertex>{2, 3, 4});

  auto edge = build_complex(2, 1, {Simplex{1, 2}});
  CHECK(f_of(link(edge, Simplex{1}).complex) == std::vector<std::uint64_t>{1});

  CHECK(link(hollow_triangle(), Simplex{1, 2}).complex.empty());
  CHECK(code_of([&] { link(edge, Simplex{1, 2}); }) == ErrorCode::InvalidArgument);

  // Compaction keeps order: link of 2 in the path 1-2-3 is {1, 3} relabelled {1, 2}.
  auto path = build_complex(3, 1, {Simplex{1, 2}, Simplex{2, 3}});
  auto mid = link(path, Simplex{2});
  CHECK(mid.complex == build_complex(2, 0, {Simplex{1}, Simplex{2}}));
  CHECK(mid.parent_label == std::vector<Vertex>{1, 3});
}

TEST_CASE("link, star and degree against the oracle on every small complex") {
  for (unsigned n = 2; n <= 5; ++n) {
    const int r = n <= 4 ? 2 : 1;
    for (const auto& y : enumerate_space(n, r)) {
      const auto faces = oracle::faces_of(y);
      for (int d = 0; d < r; ++d) {
        for (const auto& sigma : y.faces(d)) {
          const oracle::Face sf(sigma.vertices().begin(), sigma.vertices().end());
          const auto lk = link(y, sigma);
          // Map link faces back to parent labels and compare with the definition.
          oracle::FaceSet mapped;
          for (int e = 0; e <= lk.complex.r(); ++e) {
            for (const auto& t : lk.complex.faces(e)) {
              oracle::Face f;
              for (Vertex v : t.vertices()) f.push_back(lk.parent_label[v - 1]);
              mapped.insert(f);
            }
          }
          REQUIRE(mapped == oracle::link(faces, sf));
          const auto dim = lk.complex.dimension();
          CHECK((!dim || *dim <= r - sigma.dim() - 1));
          CHECK(degree(y, sigma) == lk.complex.count(0));

          const auto st = star(y, sigma);
          CHECK(st.contains(sigma));
          for (const auto& f : mapped) CHECK(st.contains(Simplex(std::vector<Vertex>(f.begin(), f.end()))));
        }
      }
    }
  }
}

TEST_CASE("join_with_simplex") {
  auto point = build_complex(2, 0, {Simplex{2}});
  auto cone = join_with_simplex(Simplex{1}, point);
  CHECK(f_of(cone) == std::vector<std::uint64_t>{2, 1});

  auto lone = build_complex(3, 0, {Simplex{3}});
  auto tri = join_with_simplex(Simplex{1, 2}, lone);
  CHECK(f_of(tri) == std::vector<std::uint64_t>{3, 3, 1});

  // Cone counts f_i(CL) = f_i(L) + f_{i-1}(L), and the k = 1 join counts.
  auto l = build_complex(6, 1, {Simplex{3, 4}, Simplex{4, 5}, Simplex{6}});
  auto fl = f_of(l);
  auto c = f_of(join_with_simplex(Simplex{1}, l));
  CHECK(c[0] == fl[0] + 1);
  CHECK(c[1] == fl[1] + fl[0]);
  CHECK(c[2] == fl[1]);
  auto j = f_of(join_with_simplex(Simplex{1, 2}, l));
  // f_i(sigma0 * L) = sum_j C(k+1, j+1) f_{i-j-1}(L) + C(k+1, i+1).
  CHECK(j[0] == 2 + fl[0]);
  CHECK(j[1] == 1 + 2 * fl[0] + fl[1]);
  CHECK(j[2] == fl[0] + 2 * fl[1]);
  CHECK(j[3] == fl[1]);

  CHECK_THROWS_AS(join_with_simplex(Simplex{3}, l), Error);
}

TEST_CASE("degree examples") {
  CHECK(degree(full_skeleton(3, 2), Simplex{1, 2}) == 1);
  CHECK(degree(build_complex(3, 1, {Simplex{1, 2}, Simplex{2, 3}}), Simplex{2}) == 2);
  CHECK(degree(hollow_triangle(), Simplex{1, 3}) == 0);
  CHECK(code_of([] { degree(hollow_triangle(), Simplex{1, 2, 3}); }) == ErrorCode::NotAFace);
}

TEST_CASE("is_subcomplex and the external-face criterion") {
  auto full_tri = full_skeleton(3, 2);
  CHECK(is_subcomplex(SimplicialComplex(3, 2), full_tri));
  CHECK(is_subcomplex(hollow_triangle(), full_tri));
  auto a = build_complex(3, 1, {Simplex{1, 2}, Simplex{3}});
  auto b = build_complex(3, 1, {Simplex{1, 3}, Simplex{2}});
  CHECK_FALSE(is_subcomplex(a, b));
  CHECK_THROWS_AS(is_subcomplex(a, full_tri), Error);

  const auto space = enumerate_space(3, 2);
  for (const auto& x : space) {
    for (const auto& y : space) {
      const bool sub = oracle::subset(oracle::faces_of(x), oracle::faces_of(y));
      REQUIRE(is_subcomplex(x, y) == sub);
      REQUIRE(external_face_criterion(x, y) == sub);
    }
  }
}

TEST_CASE("set operations") {
  auto a = build_complex(4, 2, {Simplex{1, 2, 3}});
  auto b = build_complex(4, 2, {Simplex{2, 3, 4}});
  CHECK(intersection(a, b) == build_complex(4, 2, {Simplex{2, 3}}));
  CHECK(complex_union(a, b).count(2) == 2);
  CHECK(delete_vertex(a, 1) == build_complex(3, 2, {Simplex{1, 2}}));
  auto grown = with_faces(hollow_triangle(), std::vector<Simplex>{Simplex{1, 2, 3}});
  CHECK(grown == full_skeleton(3, 2));
  CHECK_THROWS_AS(with_faces(SimplicialComplex(3, 2), std::vector<Simplex>{Simplex{1, 2}}), Error);
}

TEST_CASE("canonical JSON round trip") {
  auto y = build_complex(5, 2, {Simplex{1, 2, 3}, Simplex{4}, Simplex{3, 5}});
  const auto text = to_canonical_json(y);
  CHECK(text == R"({"n":5,"r":2,"maximal_faces":[[1,2,3],[3,5],[4]]})");
  CHECK(complex_from_json(text) == y);
  CHECK(to_canonical_json(complex_from_json(R"({"n":5,"r":2,"maximal_faces":[[4],[3,5],[1,2,3],[1,2]]})")) ==
        text);
  CHECK(code_of([] { complex_from_json("{"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { complex_from_json(R"({"n":2,"r":1,"maximal_faces":[[2,1]]})"); }) ==
        ErrorCode::ParseError);
  for (const auto& z : enumerate_space(4, 2)) CHECK(complex_from_json(to_canonical_json(z)) == z);
}

TEST_CASE("large ground sets") {
  auto y = build_complex(100000, 2, {Simplex{1, 50000, 99999}, Simplex{7, 8}});
  CHECK(y.contains(Simplex{50000, 99999}));
  CHECK(face_profile(y).e[0] == 100000 - 5);
}
