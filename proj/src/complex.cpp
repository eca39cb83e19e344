#include "randcomplex/complex.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "internal.hpp"
#include "randcomplex/combinatorics.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

namespace {

// Facets are materialised into a stack buffer; ranks fit in 64 bits only for
// simplexes of modest size anyway.
constexpr std::size_t kMaxSimplexSize = 64;

bool labels_valid(std::span<const Vertex> vertices, std::uint32_t n) {
  if (vertices.empty() || vertices.front() == 0 || vertices.back() > n) return false;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i - 1] >= vertices[i]) return false;
  }
  return true;
}

void require_same_space(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.n() != b.n() || a.r() != b.r()) {
    fail(ErrorCode::InvalidArgument, "complexes live in different spaces (n, r)");
  }
}

void require_face(const SimplicialComplex& y, const Simplex& sigma) {
  if (!y.contains(sigma)) {
    fail(ErrorCode::NotAFace, "simplex is not a face of the complex");
  }
}

template <typename Fn>
void for_each_external_face(const SimplicialComplex& y, Fn&& fn) {
  std::vector<Vertex> sigma;
  for (Vertex v = 1; v <= y.n(); ++v) {
    if (!y.contains_vertex(v)) {
      const Vertex one[1] = {v};
      fn(0, std::span<const Vertex>(one));
    }
  }
  const std::vector<Vertex> verts = y.vertices();
  for (int d = 1; d <= y.r(); ++d) {
    // Each candidate is (tau, v) with tau its facet missing the largest vertex.
    for (std::size_t t = 0; t < y.count(d - 1); ++t) {
      const auto tau = y.face(d - 1, t);
      auto it = std::upper_bound(verts.begin(), verts.end(), tau.back());
      for (; it != verts.end(); ++it) {
        sigma.assign(tau.begin(), tau.end());
        sigma.push_back(*it);
        if (!y.contains(sigma) && boundary_in(y, sigma)) fn(d, std::span<const Vertex>(sigma));
      }
    }
  }
}

}  // namespace

// --- SimplicialComplex ------------------------------------------------------

SimplicialComplex::SimplicialComplex(std::uint32_t n, int r) : n_(n), r_(r) {
  require_rankable(n, r);
  layers_.resize(static_cast<std::size_t>(r) + 1);
}

std::optional<int> SimplicialComplex::dimension() const noexcept {
  for (int d = r_; d >= 0; --d) {
    if (!layers_[d].ranks.empty()) return d;
  }
  return std::nullopt;
}

std::size_t SimplicialComplex::count(int d) const noexcept {
  if (d < 0 || d > r_) return 0;
  return layers_[d].ranks.size();
}

std::size_t SimplicialComplex::total_faces() const noexcept {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.ranks.size();
  return total;
}

std::span<const Vertex> SimplicialComplex::face(int d, std::size_t index) const {
  const auto width = static_cast<std::size_t>(d) + 1;
  return std::span<const Vertex>(layers_.at(d).vertices).subspan(index * width, width);
}

std::span<const std::uint64_t> SimplicialComplex::ranks(int d) const {
  return layers_.at(d).ranks;
}

std::vector<Simplex> SimplicialComplex::faces(int d) const {
  std::vector<Simplex> out;
  out.reserve(count(d));
  for (std::size_t i = 0; i < count(d); ++i) out.emplace_back(face(d, i));
  return out;
}

std::vector<Vertex> SimplicialComplex::vertices() const { return layers_.front().vertices; }

bool SimplicialComplex::contains_vertex(Vertex v) const {
  const auto& vs = layers_.front().vertices;
  return std::binary_search(vs.begin(), vs.end(), v);
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> vertices) const {
  if (vertices.empty() || vertices.size() > layers_.size()) return std::nullopt;
  if (!labels_valid(vertices, n_)) return std::nullopt;
  const auto& ranks = layers_[vertices.size() - 1].ranks;
  const std::uint64_t key = colex_rank(vertices);
  auto it = std::lower_bound(ranks.begin(), ranks.end(), key);
  if (it == ranks.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - ranks.begin());
}

bool SimplicialComplex::contains(std::span<const Vertex> vertices) const {
  return index_of(vertices).has_value();
}

std::vector<Simplex> SimplicialComplex::maximal_faces() const {
  std::vector<Simplex> out;
  for (int d = 0; d <= r_; ++d) {
    std::vector<char> covered(count(d), 0);
    if (d < r_) {
      std::array<Vertex, kMaxSimplexSize> buf{};
      for (std::size_t i = 0; i < count(d + 1); ++i) {
        const auto coface = face(d + 1, i);
        for (std::size_t skip = 0; skip < coface.size(); ++skip) {
          std::size_t w = 0;
          for (std::size_t j = 0; j < coface.size(); ++j) {
            if (j != skip) buf[w++] = coface[j];
          }
          if (auto idx = index_of(std::span<const Vertex>(buf.data(), w))) covered[*idx] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < count(d); ++i) {
      if (!covered[i]) out.emplace_back(face(d, i));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.n_ != b.n_ || a.r_ != b.r_) return false;
  for (std::size_t d = 0; d < a.layers_.size(); ++d) {
    if (a.layers_[d].ranks != b.layers_[d].ranks) return false;
  }
  return true;
}

// --- ComplexBuilder ---------------------------------------------------------

ComplexBuilder::ComplexBuilder(std::uint32_t n, int r) : complex_(n, r) {}

void ComplexBuilder::check(std::span<const Vertex> vertices) const {
  if (vertices.empty()) fail(ErrorCode::InvalidArgument, "empty simplex");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i - 1] >= vertices[i]) {
      fail(ErrorCode::InvalidArgument, "simplex vertices must be strictly increasing");
    }
  }
  if (vertices.front() == 0 || vertices.back() > complex_.n_) {
    fail(ErrorCode::OutOfRange, "vertex label outside [1, " + std::to_string(complex_.n_) + "]");
  }
  if (static_cast<int>(vertices.size()) - 1 > complex_.r_) {
    fail(ErrorCode::InvalidArgument, "simplex dimension exceeds the cap r = " +
                                         std::to_string(complex_.r_));
  }
}

void ComplexBuilder::add_face(std::span<const Vertex> vertices) {
  check(vertices);
  auto& layer = complex_.layers_[vertices.size() - 1];
  layer.ranks.push_back(colex_rank(vertices));
  layer.vertices.insert(layer.vertices.end(), vertices.begin(), vertices.end());
}

void ComplexBuilder::add_face_unchecked(std::span<const Vertex> vertices, std::uint64_t rank) {
  auto& layer = complex_.layers_[vertices.size() - 1];
  layer.ranks.push_back(rank);
  layer.vertices.insert(layer.vertices.end(), vertices.begin(), vertices.end());
}

void ComplexBuilder::add_closure(std::span<const Vertex> vertices) {
  check(vertices);
  detail::for_each_nonempty_subset(vertices, [&](std::span<const Vertex> s) { add_face(s); });
}

void ComplexBuilder::add_complex(const SimplicialComplex& other) {
  if (other.n() > complex_.n_ || other.r() > complex_.r_) {
    fail(ErrorCode::InvalidArgument, "complex does not fit in the target space");
  }
  for (int d = 0; d <= other.r(); ++d) {
    auto& layer = complex_.layers_[d];
    const auto& src = other.layers_[d];
    layer.ranks.insert(layer.ranks.end(), src.ranks.begin(), src.ranks.end());
    layer.vertices.insert(layer.vertices.end(), src.vertices.begin(), src.vertices.end());
  }
}

SimplicialComplex ComplexBuilder::build(Closure closure) && {
  for (std::size_t d = 0; d < complex_.layers_.size(); ++d) {
    auto& layer = complex_.layers_[d];
    const std::size_t width = d + 1;
    if (std::is_sorted(layer.ranks.begin(), layer.ranks.end()) &&
        std::adjacent_find(layer.ranks.begin(), layer.ranks.end()) == layer.ranks.end()) {
      continue;
    }
    std::vector<std::size_t> order(layer.ranks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return layer.ranks[a] < layer.ranks[b]; });
    std::vector<std::uint64_t> ranks;
    std::vector<Vertex> vertices;
    ranks.reserve(order.size());
    vertices.reserve(order.size() * width);
    for (std::size_t idx : order) {
      if (!ranks.empty() && ranks.back() == layer.ranks[idx]) continue;
      ranks.push_back(layer.ranks[idx]);
      vertices.insert(vertices.end(), layer.vertices.begin() + idx * width,
                      layer.vertices.begin() + (idx + 1) * width);
    }
    layer.ranks = std::move(ranks);
    layer.vertices = std::move(vertices);
  }
  if (closure == Closure::Verify) {
    for (int d = 1; d <= complex_.r_; ++d) {
      for (std::size_t i = 0; i < complex_.count(d); ++i) {
        if (!boundary_in(complex_, complex_.face(d, i))) {
          fail(ErrorCode::InvalidArgument, "face set is not downward closed");
        }
      }
    }
  }
  return std::move(complex_);
}

// --- construction -----------------------------------------------------------

SimplicialComplex build_complex(std::uint32_t n, int r, std::span<const Simplex> generators) {
  ComplexBuilder builder(n, r);
  for (const auto& g : generators) builder.add_closure(g.view());
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

SimplicialComplex build_complex(std::uint32_t n, int r, std::initializer_list<Simplex> generators) {
  return build_complex(n, r, std::span<const Simplex>(generators.begin(), generators.size()));
}

SimplicialComplex full_skeleton(std::uint32_t n, int r) {
  ComplexBuilder builder(n, r);
  for (int d = 0; d <= r; ++d) {
    detail::for_each_combination(n, static_cast<std::size_t>(d) + 1,
                                 [&](std::span<const Vertex> c) { builder.add_face(c); });
  }
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

// --- faces and external faces -----------------------------------------------

bool boundary_in(const SimplicialComplex& y, std::span<const Vertex> vertices) {
  if (vertices.size() <= 1) return true;
  if (vertices.size() > kMaxSimplexSize) return false;
  std::array<Vertex, kMaxSimplexSize> buf{};
  for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (j != skip) buf[w++] = vertices[j];
    }
    if (!y.contains(std::span<const Vertex>(buf.data(), w))) return false;
  }
  return true;
}

bool is_external_face(const SimplicialComplex& y, std::span<const Vertex> vertices) {
  if (!labels_valid(vertices, y.n())) return false;
  if (static_cast<int>(vertices.size()) - 1 > y.r()) return false;
  return !y.contains(vertices) && boundary_in(y, vertices);
}

std::vector<std::vector<Simplex>> external_faces(const SimplicialComplex& y) {
  std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(y.r()) + 1);
  for_each_external_face(y, [&](int d, std::span<const Vertex> s) { out[d].emplace_back(s); });
  return out;
}

FaceProfile face_profile(const SimplicialComplex& y) {
  FaceProfile profile;
  const auto layers = static_cast<std::size_t>(y.r()) + 1;
  profile.f.resize(layers);
  profile.e.assign(layers, 0);
  for (int d = 0; d <= y.r(); ++d) profile.f[d] = y.count(d);
  for_each_external_face(y, [&](int d, std::span<const Vertex>) { ++profile.e[d]; });
  return profile;
}

bool complement_is_open_star_union(const SimplicialComplex& y) {
  bool ok = true;
  for (int d = 0; d <= y.r() && ok; ++d) {
    detail::for_each_combination(y.n(), static_cast<std::size_t>(d) + 1,
                                 [&](std::span<const Vertex> sigma) {
                                   if (!ok || y.contains(sigma)) return;
                                   bool found = false;
                                   detail::for_each_nonempty_subset(
                                       sigma, [&](std::span<const Vertex> sub) {
                                         if (!found && is_external_face(y, sub)) found = true;
                                       });
                                   ok = found;
                                 });
  }
  return ok;
}

// --- star, link, join -------------------------------------------------------

SimplicialComplex star(const SimplicialComplex& y, const Simplex& sigma) {
  require_face(y, sigma);
  ComplexBuilder builder(y.n(), y.r());
  std::vector<Vertex> u;
  for (int d = 0; d <= y.r(); ++d) {
    for (std::size_t i = 0; i < y.count(d); ++i) {
      const auto tau = y.face(d, i);
      detail::merge_vertices(sigma.view(), tau, u);
      if (y.contains(u)) builder.add_face(tau);
    }
  }
  return std::move(builder).build();
}

Link link(const SimplicialComplex& y, const Simplex& sigma) {
  require_face(y, sigma);
  if (sigma.dim() >= y.r()) {
    fail(ErrorCode::InvalidArgument, "link needs dim sigma < r");
  }
  const auto n_link = static_cast<std::uint32_t>(y.n() - sigma.size());
  const int r_link = y.r() - sigma.dim() - 1;

  Link out{SimplicialComplex(n_link, r_link), {}};
  out.parent_label.reserve(n_link);
  for (Vertex v = 1; v <= y.n(); ++v) {
    if (!sigma.contains(v)) out.parent_label.push_back(v);
  }
  const auto compact = [&](Vertex v) {
    const auto below = std::lower_bound(sigma.vertices().begin(), sigma.vertices().end(), v) -
                       sigma.vertices().begin();
    return static_cast<Vertex>(v - below);
  };

  ComplexBuilder builder(n_link, r_link);
  std::vector<Vertex> u;
  std::vector<Vertex> mapped;
  for (int d = 0; d <= r_link; ++d) {
    for (std::size_t i = 0; i < y.count(d); ++i) {
      const auto tau = y.face(d, i);
      if (!detail::disjoint(tau, sigma.view())) continue;
      detail::merge_vertices(sigma.view(), tau, u);
      if (!y.contains(u)) continue;
      mapped.clear();
      for (Vertex v : tau) mapped.push_back(compact(v));
      builder.add_face(mapped);
    }
  }
  out.complex = std::move(builder).build();
  return out;
}

SimplicialComplex join_with_simplex(const Simplex& sigma0, const SimplicialComplex& l) {
  if (sigma0.back() > l.n()) {
    fail(ErrorCode::OutOfRange, "join apex labels must lie in the ground set of L");
  }
  for (Vertex v : sigma0.vertices()) {
    if (l.contains_vertex(v)) {
      fail(ErrorCode::InvalidArgument, "join requires disjoint vertex sets");
    }
  }
  const int r_join = l.r() + sigma0.dim() + 1;
  ComplexBuilder builder(l.n(), r_join);
  builder.add_closure(sigma0.view());
  std::vector<Vertex> u;
  for (int d = 0; d <= l.r(); ++d) {
    for (std::size_t i = 0; i < l.count(d); ++i) {
      const auto beta = l.face(d, i);
      builder.add_face(beta);
      detail::for_each_nonempty_subset(sigma0.view(), [&](std::span<const Vertex> alpha) {
        detail::merge_vertices(alpha, beta, u);
        builder.add_face(u);
      });
    }
  }
  return std::move(builder).build();
}

std::size_t degree(const SimplicialComplex& y, const Simplex& sigma) {
  require_face(y, sigma);
  if (sigma.dim() >= y.r()) return 0;
  std::size_t count = 0;
  std::vector<Vertex> u;
  for (std::size_t i = 0; i < y.count(0); ++i) {
    const Vertex v = y.face(0, i)[0];
    if (sigma.contains(v)) continue;
    detail::insert_sorted(sigma.view(), v, u);
    if (y.contains(u)) ++count;
  }
  return count;
}

// --- comparisons and set operations -----------------------------------------

bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_space(a, b);
  for (int d = 0; d <= a.r(); ++d) {
    const auto ra = a.ranks(d);
    const auto rb = b.ranks(d);
    if (!std::includes(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
  }
  return true;
}

bool external_face_criterion(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_space(a, b);
  bool ok = true;
  for_each_external_face(b, [&](int, std::span<const Vertex> sigma) {
    if (!ok) return;
    bool found = false;
    detail::for_each_nonempty_subset(sigma, [&](std::span<const Vertex> sub) {
      if (!found && is_external_face(a, sub)) found = true;
    });
    ok = found;
  });
  return ok;
}

SimplicialComplex with_faces(const SimplicialComplex& y, std::span<const Simplex> added) {
  ComplexBuilder builder(y.n(), y.r());
  builder.add_complex(y);
  for (const auto& s : added) builder.add_face(s);
  return std::move(builder).build();
}

SimplicialComplex intersection(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_space(a, b);
  ComplexBuilder builder(a.n(), a.r());
  for (int d = 0; d <= a.r(); ++d) {
    for (std::size_t i = 0; i < a.count(d); ++i) {
      if (b.contains(a.face(d, i))) builder.add_face(a.face(d, i));
    }
  }
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  require_same_space(a, b);
  ComplexBuilder builder(a.n(), a.r());
  builder.add_complex(a);
  builder.add_complex(b);
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

SimplicialComplex delete_vertex(const SimplicialComplex& y, Vertex v) {
  if (v == 0 || v > y.n()) fail(ErrorCode::OutOfRange, "vertex label out of range");
  ComplexBuilder builder(y.n() - 1, y.r());
  std::vector<Vertex> mapped;
  for (int d = 0; d <= y.r(); ++d) {
    for (std::size_t i = 0; i < y.count(d); ++i) {
      const auto tau = y.face(d, i);
      if (std::binary_search(tau.begin(), tau.end(), v)) continue;
      mapped.clear();
      for (Vertex w : tau) mapped.push_back(w > v ? w - 1 : w);
      builder.add_face(mapped);
    }
  }
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

}  // namespace randcomplex
