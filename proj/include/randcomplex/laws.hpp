#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randcomplex/parameters.hpp"

namespace randcomplex {

/// Derived parameters as monomials in the base parameters: row i holds the
/// integer exponents e_{ij} with p'_i = prod_j p_j^{e_ij}. Transforms compose
/// by integer arithmetic on the rows, so iterated transforms carry no
/// floating-point drift.
class ParameterMonomials {
 public:
  /// Identity: p'_i = p_i for i = 0..r.
  static ParameterMonomials identity(int r);

  int r() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  int base_size() const noexcept { return base_size_; }
  const std::vector<std::vector<std::uint64_t>>& rows() const noexcept { return rows_; }

  /// Link of a k-simplex: row i becomes sum_{j=0}^{k+1} C(k+1, j) row_{i+j}.
  ParameterMonomials link(int k) const;
  /// Intersection of k vertex links: row i becomes row_i + k * row_{i+1}.
  ParameterMonomials links_intersection(std::uint64_t k) const;

  ParameterVector evaluate(const ParameterVector& base) const;

  friend bool operator==(const ParameterMonomials&, const ParameterMonomials&) = default;

 private:
  ParameterMonomials(int base_size, std::vector<std::vector<std::uint64_t>> rows)
      : base_size_(base_size), rows_(std::move(rows)) {}

  int base_size_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// Parameters of the link of a k-simplex (0 <= k < r); length r - k.
ParameterVector link_parameters(const ParameterVector& p, int k);
/// Parameters of the intersection of the links of k distinct vertices; length r.
ParameterVector links_intersection_parameters(const ParameterVector& p, std::uint64_t k);
/// Componentwise product: the law of the intersection of two independent complexes.
ParameterVector intersection_parameters(const ParameterVector& p, const ParameterVector& q);
/// Restricting to the simplex on all but one vertex keeps the parameters.
ParameterVector restriction_parameters(const ParameterVector& p);

struct DegreeLaw {
  std::uint64_t trials = 0;
  double success = 0.0;

  double pmf(std::uint64_t k) const;
  double mean() const { return static_cast<double>(trials) * success; }
};

/// Degree of a k-simplex: Bi(n - k - 1, prod_{i=0}^{k+1} p_i^{C(k+1, i)}).
DegreeLaw degree_law(const ParameterVector& p, std::uint64_t n, int k);

/// Expected number of edges of degree zero:
/// C(n, 2) p_0^2 p_1 (1 - p_0 p_1^2 p_2)^{n-2}. Requires r >= 2 and n p_0 > 1.
double edge_degree_zero_bound(const ParameterVector& p, std::uint64_t n);

enum class Preset { ErdosRenyi, LinialMeshulam, MeshulamWallach, Clique };

std::optional<Preset> parse_preset(std::string_view name);
std::string_view preset_name(Preset preset);

/// Materialises a preset to length r + 1. Defaults: r = 1 for Erdos-Renyi,
/// r = 2 for Linial-Meshulam; the other two require r. Dimensions above the
/// model's natural top get p = 0 (Erdos-Renyi, Linial-Meshulam) or p = 1
/// (clique tail).
ParameterVector preset(Preset preset, double p, std::optional<int> r = std::nullopt);

}  // namespace randcomplex
