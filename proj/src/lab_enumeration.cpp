#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "internal.hpp"
#include "lab_space.hpp"
#include "randcomplex/combinatorics.hpp"
#include "randcomplex/complex_io.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/laws.hpp"
#include "randcomplex/measure.hpp"

namespace randcomplex {

namespace detail {

MaskSpace::MaskSpace(std::uint32_t n, int r, std::uint64_t guard) : n_(n), r_(r) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "r must be >= 0");
  require_rankable(n, r);
  std::uint64_t total = 0;
  for (int d = 0; d <= r; ++d) {
    total += binomial(n, static_cast<std::uint64_t>(d) + 1);
    if (total > 64) {
      fail(ErrorCode::GuardExceeded, "space too large to enumerate (more than 64 simplexes)");
    }
  }
  for (int d = 0; d <= r; ++d) {
    offset_.push_back(simplices_.size());
    for_each_combination(n, static_cast<std::size_t>(d) + 1, [&](std::span<const Vertex> c) {
      simplices_.emplace_back(c.begin(), c.end());
    });
  }
  offset_.push_back(simplices_.size());

  facets_.assign(simplices_.size(), 0);
  std::vector<Vertex> facet;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    if (s.size() < 2) continue;
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
      facet.clear();
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != skip) facet.push_back(s[j]);
      }
      facets_[i] |= bit(facet);
    }
  }

  // Depth-first over simplexes; a simplex may be included once its facets are.
  const std::size_t count = simplices_.size();
  auto descend = [&](auto&& self, std::size_t i, std::uint64_t mask) -> void {
    if (i == count) {
      if (masks_.size() >= guard) {
        fail(ErrorCode::GuardExceeded,
             "space has more than " + std::to_string(guard) + " complexes");
      }
      masks_.push_back(mask);
      return;
    }
    self(self, i + 1, mask);
    if ((facets_[i] & ~mask) == 0) self(self, i + 1, mask | (std::uint64_t{1} << i));
  };
  descend(descend, 0, 0);
}

std::uint64_t MaskSpace::bit(std::span<const Vertex> vertices) const {
  const std::size_t d = vertices.size() - 1;
  return std::uint64_t{1} << (offset_[d] + colex_rank(vertices));
}

SimplicialComplex MaskSpace::decode(std::uint64_t mask) const {
  ComplexBuilder builder(n_, r_);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    if (mask >> i & 1U) builder.add_face(simplices_[i]);
  }
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

std::uint64_t MaskSpace::encode(const SimplicialComplex& y) const {
  if (y.n() != n_ || y.r() != r_) fail(ErrorCode::InvalidArgument, "complex is from another space");
  std::uint64_t mask = 0;
  for (int d = 0; d <= r_; ++d) {
    for (std::uint64_t rank : y.ranks(d)) mask |= std::uint64_t{1} << (offset_[d] + rank);
  }
  return mask;
}

}  // namespace detail

std::uint64_t enumeration_guard() {
  const char* env = std::getenv("RANDCOMPLEX_GUARD");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationGuard;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || value == 0 || env[0] == '-') {
    fail(ErrorCode::InvalidArgument, "RANDCOMPLEX_GUARD must be a positive integer");
  }
  return value;
}

std::uint64_t space_size(std::uint32_t n, int r, std::uint64_t guard) {
  return detail::MaskSpace(n, r, guard).masks().size();
}

std::vector<SimplicialComplex> enumerate_space(std::uint32_t n, int r) {
  return enumerate_space(n, r, enumeration_guard());
}

std::vector<SimplicialComplex> enumerate_space(std::uint32_t n, int r, std::uint64_t guard) {
  const detail::MaskSpace space(n, r, guard);
  std::vector<SimplicialComplex> out;
  out.reserve(space.masks().size());
  for (std::uint64_t mask : space.masks()) out.push_back(space.decode(mask));
  return out;
}

double ExactDistribution::total() const {
  double sum = 0.0;
  for (const auto& [key, prob] : entries) sum += prob;
  return sum;
}

double ExactDistribution::probability(const std::string& key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? 0.0 : it->second;
}

ExactDistribution enumerate_distribution(std::uint32_t n, int r, const ParameterVector& p) {
  if (p.r() != r) fail(ErrorCode::InvalidArgument, "parameter vector length must be r + 1");
  const detail::MaskSpace space(n, r, enumeration_guard());
  ExactDistribution dist;
  dist.n = n;
  dist.r = r;
  dist.params = p;
  for (std::uint64_t mask : space.masks()) {
    const auto y = space.decode(mask);
    dist.entries.emplace(to_canonical_json(y), measure(y, p).probability());
  }
  return dist;
}

double max_abs_difference(const ExactDistribution& a, const ExactDistribution& b) {
  if (a.n != b.n || a.r != b.r) fail(ErrorCode::InvalidArgument, "distributions live in different spaces");
  double worst = 0.0;
  for (const auto& [key, prob] : a.entries) worst = std::max(worst, std::abs(prob - b.probability(key)));
  for (const auto& [key, prob] : b.entries) {
    if (!a.entries.contains(key)) worst = std::max(worst, std::abs(prob));
  }
  return worst;
}

namespace {

const ParameterVector& require_params(const ExactDistribution& dist) {
  if (!dist.params) {
    fail(ErrorCode::InvalidArgument, "link pushforwards need the distribution's parameters");
  }
  return *dist.params;
}

ExactDistribution push_link(const ExactDistribution& dist, const pushforward::LinkOfSimplex& map) {
  const auto& sigma = map.sigma;
  if (sigma.back() > dist.n) fail(ErrorCode::OutOfRange, "simplex label outside the ground set");
  if (sigma.dim() >= dist.r) fail(ErrorCode::InvalidArgument, "link needs dim sigma < r");
  const auto& p = require_params(dist);
  const int k = sigma.dim();
  LogProbability norm;
  for (int i = 0; i <= k; ++i) {
    norm.times_power(p[i], binomial(static_cast<std::uint64_t>(k) + 1, static_cast<std::uint64_t>(i) + 1));
  }
  if (norm.is_zero()) fail(ErrorCode::ZeroProbability, "conditioning event has probability zero");

  ExactDistribution out;
  out.n = dist.n - static_cast<std::uint32_t>(sigma.size());
  out.r = dist.r - k - 1;
  for (const auto& [key, prob] : dist.entries) {
    const auto y = complex_from_json(key);
    if (!y.contains(sigma)) continue;
    out.entries[to_canonical_json(link(y, sigma).complex)] += prob / norm.probability();
  }
  return out;
}

ExactDistribution push_links_intersection(const ExactDistribution& dist,
                                          const pushforward::IntersectLinks& map) {
  std::vector<Vertex> s = map.vertices;
  std::sort(s.begin(), s.end());
  if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end()) {
    fail(ErrorCode::InvalidArgument, "need a nonempty set of distinct vertices");
  }
  if (s.front() == 0 || s.back() > dist.n) fail(ErrorCode::OutOfRange, "vertex outside the ground set");
  if (s.size() >= dist.n) fail(ErrorCode::InvalidArgument, "need fewer than n vertices");
  if (dist.r < 1) fail(ErrorCode::InvalidArgument, "links intersection needs r >= 1");
  const auto& p = require_params(dist);
  LogProbability norm;
  norm.times_power(p[0], s.size());
  if (norm.is_zero()) fail(ErrorCode::ZeroProbability, "conditioning event has probability zero");

  const auto compact = [&](Vertex v) {
    return static_cast<Vertex>(v - (std::lower_bound(s.begin(), s.end(), v) - s.begin()));
  };
  ExactDistribution out;
  out.n = dist.n - static_cast<std::uint32_t>(s.size());
  out.r = dist.r - 1;
  std::vector<Vertex> cone;
  std::vector<Vertex> mapped;
  for (const auto& [key, prob] : dist.entries) {
    const auto y = complex_from_json(key);
    if (!std::all_of(s.begin(), s.end(), [&](Vertex v) { return y.contains_vertex(v); })) continue;
    ComplexBuilder builder(out.n, out.r);
    for (int d = 0; d <= out.r; ++d) {
      for (std::size_t i = 0; i < y.count(d); ++i) {
        const auto tau = y.face(d, i);
        if (!detail::disjoint(tau, s)) continue;
        const bool in_all = std::all_of(s.begin(), s.end(), [&](Vertex v) {
          detail::insert_sorted(tau, v, cone);
          return y.contains(cone);
        });
        if (!in_all) continue;
        mapped.clear();
        for (Vertex v : tau) mapped.push_back(compact(v));
        builder.add_face(mapped);
      }
    }
    out.entries[to_canonical_json(std::move(builder).build())] += prob / norm.probability();
  }
  return out;
}

ExactDistribution push_intersection(const ExactDistribution& dist,
                                    const pushforward::IntersectWith& map) {
  const auto second = enumerate_distribution(dist.n, dist.r, map.other);
  // Intersections of complexes are intersections of face bitmasks.
  const detail::MaskSpace space(dist.n, dist.r, enumeration_guard());
  const auto encoded = [&](const ExactDistribution& d) {
    std::vector<std::pair<std::uint64_t, double>> out;
    for (const auto& [key, prob] : d.entries) {
      if (prob != 0.0) out.emplace_back(space.encode(complex_from_json(key)), prob);
    }
    return out;
  };
  const auto left = encoded(dist);
  const auto right = encoded(second);
  std::unordered_map<std::uint64_t, double> mass;
  for (const auto& [a, pa] : left) {
    for (const auto& [b, pb] : right) mass[a & b] += pa * pb;
  }
  ExactDistribution out;
  out.n = dist.n;
  out.r = dist.r;
  for (const auto& [m, prob] : mass) out.entries[to_canonical_json(space.decode(m))] += prob;
  return out;
}

ExactDistribution push_drop(const ExactDistribution& dist, const pushforward::DropVertex& map) {
  if (dist.n == 0) fail(ErrorCode::InvalidArgument, "no vertex to drop");
  const Vertex v = map.vertex == 0 ? dist.n : map.vertex;
  ExactDistribution out;
  out.n = dist.n - 1;
  out.r = dist.r;
  for (const auto& [key, prob] : dist.entries) {
    out.entries[to_canonical_json(delete_vertex(complex_from_json(key), v))] += prob;
  }
  return out;
}

}  // namespace

ExactDistribution exact_pushforward(const ExactDistribution& dist, const Pushforward& map) {
  return std::visit(
      [&](const auto& m) -> ExactDistribution {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, pushforward::LinkOfSimplex>) return push_link(dist, m);
        if constexpr (std::is_same_v<T, pushforward::IntersectLinks>) return push_links_intersection(dist, m);
        if constexpr (std::is_same_v<T, pushforward::IntersectWith>) return push_intersection(dist, m);
        if constexpr (std::is_same_v<T, pushforward::DropVertex>) return push_drop(dist, m);
      },
      map);
}

}  // namespace randcomplex
