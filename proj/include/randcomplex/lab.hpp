#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "randcomplex/complex.hpp"
#include "randcomplex/parameters.hpp"
#include "randcomplex/sampler.hpp"

namespace randcomplex {

// --- enumeration ------------------------------------------------------------

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;

/// RANDCOMPLEX_GUARD if set to a positive integer, else the default.
std::uint64_t enumeration_guard();

/// Number of complexes in the space; throws GuardExceeded once the count
/// passes `guard`.
std::uint64_t space_size(std::uint32_t n, int r, std::uint64_t guard);

/// Every subcomplex of the r-skeleton on n vertices, once each, in canonical
/// order (depth-first over simplexes by dimension then colex rank, exclusion
/// branch first). Spaces with more than 64 candidate simplexes are refused.
std::vector<SimplicialComplex> enumerate_space(std::uint32_t n, int r);
std::vector<SimplicialComplex> enumerate_space(std::uint32_t n, int r, std::uint64_t guard);

// --- exact distributions ----------------------------------------------------

struct ExactDistribution {
  std::uint32_t n = 0;
  int r = 0;
  /// Parameters when the distribution is a multi-parameter measure.
  std::optional<ParameterVector> params;
  /// Canonical complex encoding -> probability.
  std::map<std::string, double> entries;

  double total() const;
  /// Zero for keys not present.
  double probability(const std::string& key) const;
};

ExactDistribution enumerate_distribution(std::uint32_t n, int r, const ParameterVector& p);

/// Largest entrywise difference; throws InvalidArgument if the spaces differ.
double max_abs_difference(const ExactDistribution& a, const ExactDistribution& b);

namespace pushforward {
/// Conditional law of lk(sigma) given sigma in Y.
struct LinkOfSimplex {
  Simplex sigma;
};
/// Conditional law of the intersection of the vertex links given all vertices present.
struct IntersectLinks {
  std::vector<Vertex> vertices;
};
/// Law of Y intersected with an independent Y' drawn with parameters `other`.
struct IntersectWith {
  ParameterVector other;
};
/// Law of Y restricted to the simplex on all labels except `vertex` (0 means n).
struct DropVertex {
  Vertex vertex = 0;
};
}  // namespace pushforward

using Pushforward = std::variant<pushforward::LinkOfSimplex, pushforward::IntersectLinks,
                                 pushforward::IntersectWith, pushforward::DropVertex>;

/// Link transforms divide by the closed-form conditioning probability
/// prod p_i^{C(k+1, i+1)} (p_0^k for k vertex links) and therefore need
/// dist.params. Throws ZeroProbability when the conditioning event is null.
ExactDistribution exact_pushforward(const ExactDistribution& dist, const Pushforward& map);

// --- reports ----------------------------------------------------------------

struct ExperimentReport {
  std::string metric;
  std::string context;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<bool> verdict;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::optional<std::uint64_t> degrees_of_freedom;
  std::optional<double> max_error;
  std::string note;
};

std::string report_to_json(const ExperimentReport& report);
std::string reports_to_json(std::span<const ExperimentReport> reports);

// --- Monte Carlo ------------------------------------------------------------

using EventFn = std::function<bool(const SimplicialComplex&)>;
using StatisticFn = std::function<double(const SimplicialComplex&)>;

/// Named predicates and statistics selectable from the CLI. Events:
/// connected, has_isolated_vertex, certified, empty. Statistics: f0, f1, f2,
/// isolated_vertex_count, dimension (-1 for the empty complex).
const std::map<std::string, EventFn, std::less<>>& event_registry();
const std::map<std::string, StatisticFn, std::less<>>& statistic_registry();

/// Two-sided 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// Event frequency with a Wilson interval, or a statistic's mean with a
/// normal-approximation interval, over trials 0..config.count-1. Results are
/// independent of `workers`.
ExperimentReport monte_carlo(std::string_view metric, const SampleConfig& config,
                             unsigned workers = 1);

// --- goodness of fit --------------------------------------------------------

inline constexpr double kPoolingThreshold = 5.0;
inline constexpr double kDefaultSignificance = 0.01;

/// Pearson test of observed counts against bin probabilities. Bins with
/// expected count below the pooling threshold are merged into one tail bin.
/// Observations in a zero-probability bin give an infinite statistic.
ExperimentReport chi_square_gof(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities, double significance);

/// Pearson test over complex-identity bins. Throws InvalidArgument when a
/// sample lives in a different space.
ExperimentReport chi_square_test(std::span<const SimplicialComplex> samples,
                                 const ExactDistribution& exact, double significance);

// --- sweeps -----------------------------------------------------------------

struct SweepAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

/// Axes alpha_0, alpha_1 and optionally alpha_2; r = axes - 1 and p_i = n^{-alpha_i}.
struct SweepGrid {
  std::vector<SweepAxis> axes;
  std::uint32_t n = 0;
  std::uint64_t trials = 0;
  std::string metric;
};

/// connected_fraction, certified_fraction, isolated_vertex_fraction,
/// mean_dimension, mean_f_vector.
std::span<const std::string_view> sweep_metrics();

struct SweepRow {
  std::vector<double> alpha;
  std::uint32_t n = 0;
  std::uint64_t trials = 0;
  std::string metric;
  std::vector<double> estimate;  // one value, or f_0..f_r for mean_f_vector
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::string regime;
};

/// Rows in row-major axis order (alpha_0 slowest); cell i uses seed
/// derive_seed(seed, i).
std::vector<SweepRow> sweep(const SweepGrid& grid, std::uint64_t seed, unsigned workers = 1);

inline constexpr std::string_view kSweepCsvHeader =
    "alpha0,alpha1,alpha2,n,trials,metric,estimate,ci_low,ci_high,regime";
/// Vector-valued cells are joined with ';'. alpha2 is empty for two-axis grids.
std::string sweep_csv(std::span<const SweepRow> rows);

// --- identity suite ---------------------------------------------------------

/// Cross-checks every closed-form law against the enumeration oracle over
/// (n, r) for each parameter vector. One report per law and parameter
/// vector; checks that do not apply carry no verdict and a note.
std::vector<ExperimentReport> verify_identities(std::uint32_t n, int r,
                                                std::span<const ParameterVector> grid);

}  // namespace randcomplex
