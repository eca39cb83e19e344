#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "randcomplex/complex.hpp"
#include "randcomplex/parameters.hpp"

namespace randcomplex {

/// Counter-based generator: every draw is a pure function of
/// (seed, trial, dimension, rank), so results do not depend on the order in
/// which trials or candidate simplexes are visited.
///
/// The per-(trial, dimension) stream is a SplitMix64 sequence indexed by the
/// simplex's colex rank.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial) noexcept;

  std::uint64_t bits(int dim, std::uint64_t rank) const noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(int dim, std::uint64_t rank) const noexcept;

 private:
  std::uint64_t key_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;
/// Independent child seed for stream `index` (used for sweep cells and shards).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct SampleConfig {
  std::uint32_t n = 0;
  int r = 0;
  ParameterVector p{1.0};
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
};

void validate(const SampleConfig& config);

/// Trial `index` of the layered process: each vertex is kept with probability
/// p_0, then for i = 1..r each i-simplex whose boundary is present is added
/// with probability p_i.
SimplicialComplex sample(const SampleConfig& config, std::uint64_t index);

/// Trials [begin, end) in index order.
std::vector<SimplicialComplex> sample_range(const SampleConfig& config, std::uint64_t begin,
                                            std::uint64_t end);
/// All trials 0..count-1.
std::vector<SimplicialComplex> sample_stream(const SampleConfig& config);

/// Streams trials 0..count-1 to the callback in index order without storing them.
void for_each_sample(const SampleConfig& config,
                     const std::function<void(std::uint64_t, const SimplicialComplex&)>& fn);

}  // namespace randcomplex
