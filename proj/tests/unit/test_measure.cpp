#include <doctest.h>

#include <cmath>

#include "randcomplex/complex.hpp"
#include "randcomplex/complex_io.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/measure.hpp"
#include "randcomplex/parameters.hpp"
#include "support/oracle.hpp"

using namespace randcomplex;

namespace {

const std::vector<std::vector<double>> kGrid = {
    {0.6, 0.5, 0.4, 0.3}, {0.0, 0.3, 1.0, 0.7}, {1.0, 0.7, 0.0, 0.3},
    {0.3, 1.0, 0.7, 1.0}, {1.0, 1.0, 1.0, 1.0}, {0.7, 0.3, 0.3, 0.0},
};

ParameterVector truncate(const std::vector<double>& p, int r) {
  return ParameterVector(std::vector<double>(p.begin(), p.begin() + r + 1));
}

double prob(const SimplicialComplex& y, const ParameterVector& p) { return measure(y, p).probability(); }

SimplicialComplex hollow_triangle() {
  return build_complex(3, 2, {Simplex{1, 2}, Simplex{1, 3}, Simplex{2, 3}});
}

}  // namespace

TEST_CASE("parameter vector validation") {
  CHECK_THROWS_AS(ParameterVector({0.5, 1.5}), Error);
  CHECK_THROWS_AS(ParameterVector({-0.1}), Error);
  CHECK_THROWS_AS(ParameterVector({std::nan("")}), Error);
  CHECK_THROWS_AS(ParameterVector(std::vector<double>{}), Error);
  ParameterVector p{0.25, 0.5};
  CHECK(p.q(0) == 0.75);
  CHECK(p.omega(100) == 25.0);
  CHECK(p.r() == 1);
}

TEST_CASE("log probability powers") {
  LogProbability a;
  a.times_power(0.0, 0);
  a.times_complement_power(1.0, 0);
  CHECK(a.probability() == 1.0);
  a.times_power(0.0, 2);
  CHECK(a.is_zero());
  CHECK(a.probability() == 0.0);
  LogProbability b;
  b.times_complement_power(0.25, 3);
  CHECK(b.probability() == doctest::Approx(0.421875).epsilon(1e-15));
}

TEST_CASE("measure examples") {
  auto edge = build_complex(2, 1, {Simplex{1, 2}});
  CHECK(prob(edge, {0.5, 0.5}) == doctest::Approx(0.125).epsilon(1e-15));
  for (std::uint32_t n : {1u, 3u, 7u}) {
    const ParameterVector p{0.3, 0.6};
    CHECK(prob(SimplicialComplex(n, 1), p) == doctest::Approx(std::pow(0.7, n)).epsilon(1e-14));
  }
  CHECK(prob(edge, {0.5, 0.0}) == 0.0);
  CHECK(measure(edge, {0.5, 0.0}).log() == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(measure(edge, {0.5, 0.5, 0.5}), Error);
}

TEST_CASE("measure matches the oracle and sums to one") {
  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r <= std::min(2, static_cast<int>(n) - 1); ++r) {
      const auto space = oracle::all_complexes(n, r);
      for (const auto& raw : kGrid) {
        const auto p = truncate(raw, r);
        double total = 0.0;
        for (const auto& faces : space) {
          const auto y = oracle::to_complex(faces, n, r);
          const double got = prob(y, p);
          REQUIRE(std::abs(got - static_cast<double>(oracle::measure(faces, n, p.values()))) < 1e-15);
          total += got;

          // Degenerate supports.
          const auto profile = face_profile(y);
          for (int i = 0; i <= r; ++i) {
            if (p[i] == 0.0 && profile.f[i] > 0) CHECK(got == 0.0);
            if (p[i] == 1.0 && profile.e[i] > 0) CHECK(got == 0.0);
          }
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("containment probability") {
  const auto full = full_skeleton(3, 2);
  CHECK(containment_probability(full, {0.9, 0.8, 0.7}).probability() ==
        doctest::Approx(0.2612736).epsilon(1e-14));
  CHECK(containment_probability(SimplicialComplex(3, 2), {0.2, 0.3, 0.4}).probability() == 1.0);
  const double p0 = 0.4, p1 = 0.6, p2 = 0.35;
  CHECK(containment_probability(full, {p0, p1, p2}).probability() ==
        doctest::Approx(std::pow(p0, 3) * std::pow(p1, 3) * p2).epsilon(1e-14));

  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r <= std::min(2, static_cast<int>(n) - 1); ++r) {
      const oracle::MaskedSpace space(n, r);
      for (const auto& raw : kGrid) {
        const auto p = truncate(raw, r);
        std::vector<long double> mass;
        for (const auto& y : space.complexes) mass.push_back(oracle::measure(y, n, p.values()));
        for (std::size_t a = 0; a < space.masks.size(); ++a) {
          long double expected = 0.0L;
          for (std::size_t y = 0; y < space.masks.size(); ++y) {
            if ((space.masks[a] & ~space.masks[y]) == 0) expected += mass[y];
          }
          const auto got = containment_probability(oracle::to_complex(space.complexes[a], n, r), p);
          REQUIRE(std::abs(got.probability() - static_cast<double>(expected)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("sandwich probability") {
  const auto one = build_complex(2, 0, {Simplex{1}});
  const auto both = build_complex(2, 0, {Simplex{1}, Simplex{2}});
  CHECK(sandwich_probability(one, both, {0.5}).probability() == doctest::Approx(0.5).epsilon(1e-15));

  const ParameterVector p{0.6, 0.5, 0.4};
  const auto h = hollow_triangle();
  CHECK(sandwich_probability(h, h, p).probability() == doctest::Approx(prob(h, p)).epsilon(1e-14));

  // The full graph has no external faces, so any subcomplex is admissible.
  CHECK(sandwich_admissible(SimplicialComplex(3, 1), full_skeleton(3, 1)));
  const auto path = build_complex(3, 1, {Simplex{1, 2}, Simplex{3}});
  const auto small = build_complex(3, 1, {Simplex{1}});
  CHECK_FALSE(sandwich_admissible(small, path));
  try {
    sandwich_probability(small, path, {0.5, 0.5});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("sandwich for a tree plus an isolated set") {
  // Vertex set exactly K = {1..4}; path 1-2-3 present; no edge from V = {1,2,3} to vertex 4.
  const std::uint32_t n = 5;
  const unsigned t = 4, v = 3;
  const auto a = build_complex(n, 1, {Simplex{1, 2}, Simplex{2, 3}, Simplex{4}});
  const auto b = build_complex(n, 1, {Simplex{1, 2}, Simplex{2, 3}, Simplex{1, 3}, Simplex{4}});
  const double p0 = 0.6, p1 = 0.45;
  const double formula = std::pow(p0, t) * std::pow(p1, v - 1) * std::pow(1 - p0, n - t) *
                         std::pow(1 - p1, v * (t - v));
  REQUIRE(sandwich_admissible(a, b));
  CHECK(std::abs(sandwich_probability(a, b, {p0, p1}).probability() - formula) < 1e-15);

  const auto fa = oracle::faces_of(a), fb = oracle::faces_of(b);
  long double sum = 0.0L;
  for (const auto& y : oracle::all_complexes(n, 1)) {
    if (oracle::subset(fa, y) && oracle::subset(y, fb)) sum += oracle::measure(y, n, {p0, p1});
  }
  CHECK(std::abs(static_cast<double>(sum) - formula) < 1e-15);
}

TEST_CASE("sandwich equals the enumerated sum on every admissible pair") {
  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r <= std::min(2, static_cast<int>(n) - 1); ++r) {
      const oracle::MaskedSpace space(n, r);
      std::vector<SimplicialComplex> built;
      for (const auto& y : space.complexes) built.push_back(oracle::to_complex(y, n, r));
      for (const auto& raw : {kGrid[0], kGrid[1], kGrid[2]}) {
        const auto p = truncate(raw, r);
        std::vector<long double> mass;
        for (const auto& y : space.complexes) mass.push_back(oracle::measure(y, n, p.values()));
        std::size_t admissible = 0;
        for (std::size_t a = 0; a < space.masks.size(); ++a) {
          for (std::size_t b = 0; b < space.masks.size(); ++b) {
            const bool ok = space.admissible(space.complexes[a], space.complexes[b]);
            REQUIRE(sandwich_admissible(built[a], built[b]) == ok);
            if (!ok) continue;
            ++admissible;
            long double expected = 0.0L;
            for (std::size_t y = 0; y < space.masks.size(); ++y) {
              const auto m = space.masks[y];
              if ((space.masks[a] & ~m) == 0 && (m & ~space.masks[b]) == 0) expected += mass[y];
            }
            const double got = sandwich_probability(built[a], built[b], p).probability();
            REQUIRE(std::abs(got - static_cast<double>(expected)) < 1e-12);
          }
        }
        CHECK(admissible >= space.masks.size());
      }
    }
  }
}

TEST_CASE("vertex count pmf") {
  const ParameterVector p{0.5, 0.3};
  CHECK(vertex_count_pmf(0, 6, p) == doctest::Approx(std::pow(0.5, 6)).epsilon(1e-15));
  CHECK(vertex_count_pmf(1, 3, p) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK_THROWS_AS(vertex_count_pmf(7, 6, p), Error);
  for (double p0 : {0.0, 0.2, 1.0}) {
    double total = 0.0;
    for (std::uint64_t t = 0; t <= 40; ++t) total += vertex_count_pmf(t, 40, {p0});
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  const std::vector<double> params{0.35, 0.6};
  std::vector<long double> marginal(5, 0.0L);
  for (const auto& y : oracle::all_complexes(4, 1)) {
    marginal[oracle::vertices(y).size()] += oracle::measure(y, 4, params);
  }
  for (std::uint64_t t = 0; t <= 4; ++t) {
    CHECK(std::abs(vertex_count_pmf(t, 4, ParameterVector(params)) - static_cast<double>(marginal[t])) < 1e-12);
  }
}

TEST_CASE("isolated subcomplex probability examples") {
  const ParameterVector p{0.5, 0.5};
  const auto vertex = build_complex(3, 1, {Simplex{1}});
  CHECK(isolated_subcomplex_probability(vertex, 3, p).probability() == doctest::Approx(0.28125).epsilon(1e-15));

  const double p0 = 0.3, p1 = 0.2;
  const std::uint64_t n = 40;
  CHECK(isolated_subcomplex_probability(build_complex(n, 2, {Simplex{7}}), n, {p0, p1, 0.9}).probability() ==
        doctest::Approx(p0 * std::pow(1 - p0 * p1, n - 1)).epsilon(1e-13));
  const auto tree = build_complex(n, 1, {Simplex{1, 2}, Simplex{2, 3}, Simplex{2, 4}});
  const double v = 4;
  const double expected = std::pow(1 - p0 + p0 * std::pow(1 - p1, v), n - v) * std::pow(p0, v) *
                          std::pow(p1, v - 1);
  CHECK(isolated_subcomplex_probability(tree, n, {p0, p1}).probability() ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("isolated subcomplex probability matches enumeration") {
  for (unsigned n = 3; n <= 5; ++n) {
    for (int r = 1; r <= 2; ++r) {
      const auto space = oracle::all_complexes(n, r);
      const std::vector<oracle::FaceSet> shapes = {
          {{1}},
          {{1}, {2}, {1, 2}},
          {{1}, {2}, {3}, {1, 2}, {2, 3}},
      };
      for (const auto& raw : {kGrid[0], kGrid[5], std::vector<double>{0.8, 0.25, 0.5}}) {
        const std::vector<double> p(raw.begin(), raw.begin() + r + 1);
        for (const auto& s : shapes) {
          const auto sv = oracle::vertices(s);
          long double expected = 0.0L;
          for (const auto& y : space) {
            if (!oracle::subset(s, y)) continue;
            bool crossing = false;
            for (const auto& f : y) {
              if (f.size() == 2 && (sv.count(f[0]) != sv.count(f[1]))) crossing = true;
            }
            if (!crossing) expected += oracle::measure(y, n, p);
          }
          const auto got = isolated_subcomplex_probability(oracle::to_complex(s, n, r), n, ParameterVector(p));
          REQUIRE(std::abs(got.probability() - static_cast<double>(expected)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("expected edge count") {
  CHECK(expected_edge_count(2, {1.0, 1.0}) == 1.0);
  CHECK(expected_edge_count(10, {0.5, 0.1}) == doctest::Approx(1.125).epsilon(1e-15));
  CHECK(expected_edge_count(10, {0.5, 0.0}) == 0.0);
  const std::vector<double> p{0.45, 0.7, 0.2};
  long double mean = 0.0L;
  for (const auto& y : oracle::all_complexes(4, 2)) {
    long double edges = 0;
    for (const auto& f : y) edges += f.size() == 2;
    mean += edges * oracle::measure(y, 4, p);
  }
  CHECK(std::abs(expected_edge_count(4, ParameterVector(p)) - static_cast<double>(mean)) < 1e-12);
}

TEST_CASE("reconstruction from containment probabilities") {
  const ParameterVector p0{0.3};
  const ContainmentLookup from_measure = [&](const SimplicialComplex& a) -> std::optional<double> {
    return containment_probability(a, p0).probability();
  };
  CHECK(reconstruct_from_containment(from_measure, SimplicialComplex(1, 0)) == doctest::Approx(0.7).epsilon(1e-15));
  const auto full = full_skeleton(1, 0);
  CHECK(reconstruct_from_containment(from_measure, full) == doctest::Approx(0.3).epsilon(1e-15));

  const ContainmentLookup missing = [](const SimplicialComplex&) -> std::optional<double> { return std::nullopt; };
  CHECK_THROWS_AS(reconstruct_from_containment(missing, SimplicialComplex(2, 1)), Error);

  for (unsigned n = 1; n <= 4; ++n) {
    for (int r = 0; r <= std::min(2, static_cast<int>(n) - 1); ++r) {
      const oracle::MaskedSpace space(n, r);
      for (const auto& raw : {kGrid[0], kGrid[1], kGrid[4]}) {
        const auto p = truncate(raw, r);
        // Containment table built by summing oracle measures, keyed by canonical JSON.
        std::map<std::string, double> table;
        for (std::size_t a = 0; a < space.masks.size(); ++a) {
          long double sum = 0.0L;
          for (std::size_t y = 0; y < space.masks.size(); ++y) {
            if ((space.masks[a] & ~space.masks[y]) == 0) sum += oracle::measure(space.complexes[y], n, p.values());
          }
          table[to_canonical_json(oracle::to_complex(space.complexes[a], n, r))] = static_cast<double>(sum);
        }
        const ContainmentLookup lookup = [&](const SimplicialComplex& a) -> std::optional<double> {
          const auto it = table.find(to_canonical_json(a));
          if (it == table.end()) return std::nullopt;
          return it->second;
        };
        for (const auto& faces : space.complexes) {
          const auto y = oracle::to_complex(faces, n, r);
          REQUIRE(std::abs(reconstruct_from_containment(lookup, y) - prob(y, p)) < 1e-10);
        }
      }
    }
  }
}
