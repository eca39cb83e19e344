#include "randcomplex/sampler.hpp"

#include <algorithm>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "randcomplex/combinatorics.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

using Bitset = boost::dynamic_bitset<std::uint64_t>;

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed + kGolden) ^ mix64((index + 1) * 0xD1B54A32D192ED03ull));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial) noexcept
    : key_(derive_seed(seed, trial)) {}

std::uint64_t CounterRng::bits(int dim, std::uint64_t rank) const noexcept {
  const std::uint64_t stream =
      mix64(key_ ^ ((static_cast<std::uint64_t>(dim) + 1) * 0xA0761D6478BD642Full));
  return mix64(stream + (rank + 1) * kGolden);
}

double CounterRng::uniform(int dim, std::uint64_t rank) const noexcept {
  return static_cast<double>(bits(dim, rank) >> 11) * 0x1.0p-53;
}

void validate(const SampleConfig& config) {
  if (config.r < 0) fail(ErrorCode::InvalidArgument, "r must be >= 0");
  if (config.p.r() != config.r) {
    fail(ErrorCode::InvalidArgument, "parameter vector length must be r + 1");
  }
  if (config.count < 1) fail(ErrorCode::InvalidArgument, "sample count must be >= 1");
  require_rankable(config.n, config.r);
}

SimplicialComplex sample(const SampleConfig& config, std::uint64_t index) {
  validate(config);
  if (index >= config.count) fail(ErrorCode::OutOfRange, "trial index >= count");

  const CounterRng rng(config.seed, index);
  const auto& p = config.p;
  const std::uint32_t n = config.n;
  ComplexBuilder builder(n, config.r);

  // Faces of the layer under construction, flat, in discovery order.
  std::vector<Vertex> layer;
  std::vector<Vertex> vertices;
  for (Vertex v = 1; v <= n; ++v) {
    if (p[0] > 0.0 && rng.uniform(0, v - 1) < p[0]) vertices.push_back(v);
  }
  for (Vertex v : vertices) builder.add_face_unchecked(std::span<const Vertex>(&v, 1), v - 1);
  if (config.r == 0 || vertices.size() < 2) return std::move(builder).build(ComplexBuilder::Closure::Trusted);

  // Layer 1: pairs of surviving vertices; record adjacency for later layers.
  std::vector<Bitset> adjacency(n + 1, Bitset(n + 1));
  if (p[1] > 0.0) {
    for (std::size_t j = 1; j < vertices.size(); ++j) {
      const Vertex b = vertices[j];
      const std::uint64_t base = binomial(b - 1, 2);
      for (std::size_t i = 0; i < j; ++i) {
        const Vertex a = vertices[i];
        if (rng.uniform(1, base + (a - 1)) < p[1]) {
          const Vertex edge[2] = {a, b};
          layer.insert(layer.end(), edge, edge + 2);
          adjacency[a].set(b);
          adjacency[b].set(a);
        }
      }
    }
  }
  for (std::size_t i = 0; i < layer.size(); i += 2) {
    const std::span<const Vertex> e(layer.data() + i, 2);
    builder.add_face_unchecked(e, colex_rank(e));
  }

  // Layers d >= 2: extend each (d-1)-face tau by a common neighbour v > max(tau).
  Bitset common(n + 1);
  std::vector<std::uint64_t> previous_ranks;
  std::vector<Vertex> next;
  std::vector<Vertex> sigma;
  std::vector<Vertex> facet;
  for (int d = 2; d <= config.r && !layer.empty(); ++d) {
    next.clear();
    if (p[d] > 0.0) {
      const std::size_t width = static_cast<std::size_t>(d);
      if (d >= 3) {
        previous_ranks.clear();
        for (std::size_t i = 0; i < layer.size(); i += width) {
          previous_ranks.push_back(colex_rank(std::span<const Vertex>(layer.data() + i, width)));
        }
        std::sort(previous_ranks.begin(), previous_ranks.end());
      }
      for (std::size_t i = 0; i < layer.size(); i += width) {
        const std::span<const Vertex> tau(layer.data() + i, width);
        common = adjacency[tau[0]];
        for (std::size_t j = 1; j < width; ++j) common &= adjacency[tau[j]];
        for (auto v = common.find_next(tau.back()); v != Bitset::npos; v = common.find_next(v)) {
          sigma.assign(tau.begin(), tau.end());
          sigma.push_back(static_cast<Vertex>(v));
          if (d >= 3) {
            // Edges are covered by adjacency; the remaining facets contain v.
            bool present = true;
            for (std::size_t skip = 0; skip + 1 < sigma.size() && present; ++skip) {
              facet.clear();
              for (std::size_t j = 0; j < sigma.size(); ++j) {
                if (j != skip) facet.push_back(sigma[j]);
              }
              present = std::binary_search(previous_ranks.begin(), previous_ranks.end(),
                                           colex_rank(facet));
            }
            if (!present) continue;
          }
          const std::uint64_t rank = colex_rank(sigma);
          if (rng.uniform(d, rank) < p[d]) {
            next.insert(next.end(), sigma.begin(), sigma.end());
            builder.add_face_unchecked(sigma, rank);
          }
        }
      }
    }
    layer.swap(next);
  }
  return std::move(builder).build(ComplexBuilder::Closure::Trusted);
}

std::vector<SimplicialComplex> sample_range(const SampleConfig& config, std::uint64_t begin,
                                            std::uint64_t end) {
  validate(config);
  if (begin > end || end > config.count) fail(ErrorCode::OutOfRange, "invalid trial range");
  std::vector<SimplicialComplex> out;
  out.reserve(end - begin);
  for (std::uint64_t t = begin; t < end; ++t) out.push_back(sample(config, t));
  return out;
}

std::vector<SimplicialComplex> sample_stream(const SampleConfig& config) {
  return sample_range(config, 0, config.count);
}

void for_each_sample(const SampleConfig& config,
                     const std::function<void(std::uint64_t, const SimplicialComplex&)>& fn) {
  validate(config);
  for (std::uint64_t t = 0; t < config.count; ++t) fn(t, sample(config, t));
}

}  // namespace randcomplex
