#include "randcomplex/laws.hpp"

#include <cmath>
#include <string>

#include "randcomplex/combinatorics.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

ParameterMonomials ParameterMonomials::identity(int r) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "r must be >= 0");
  std::vector<std::vector<std::uint64_t>> rows(r + 1, std::vector<std::uint64_t>(r + 1, 0));
  for (int i = 0; i <= r; ++i) rows[i][i] = 1;
  return ParameterMonomials(r + 1, std::move(rows));
}

ParameterMonomials ParameterMonomials::link(int k) const {
  if (k < 0 || k >= r()) {
    fail(ErrorCode::InvalidArgument, "link of a k-simplex needs 0 <= k < r");
  }
  const int r_out = r() - k - 1;
  std::vector<std::vector<std::uint64_t>> out(r_out + 1,
                                              std::vector<std::uint64_t>(base_size_, 0));
  for (int i = 0; i <= r_out; ++i) {
    for (int j = 0; j <= k + 1; ++j) {
      const std::uint64_t c = binomial(k + 1, j);
      for (int b = 0; b < base_size_; ++b) out[i][b] += c * rows_[i + j][b];
    }
  }
  return ParameterMonomials(base_size_, std::move(out));
}

ParameterMonomials ParameterMonomials::links_intersection(std::uint64_t k) const {
  if (k < 1) fail(ErrorCode::InvalidArgument, "links intersection needs k >= 1 vertices");
  if (r() < 1) fail(ErrorCode::InvalidArgument, "links intersection needs r >= 1");
  std::vector<std::vector<std::uint64_t>> out(r(), std::vector<std::uint64_t>(base_size_, 0));
  for (int i = 0; i < r(); ++i) {
    for (int b = 0; b < base_size_; ++b) out[i][b] = rows_[i][b] + k * rows_[i + 1][b];
  }
  return ParameterMonomials(base_size_, std::move(out));
}

ParameterVector ParameterMonomials::evaluate(const ParameterVector& base) const {
  if (static_cast<int>(base.size()) != base_size_) {
    fail(ErrorCode::InvalidArgument, "parameter vector length does not match the monomials");
  }
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    double v = 1.0;
    for (int b = 0; b < base_size_; ++b) {
      if (row[b] == 0) continue;  // 0^0 = 1
      v *= std::pow(base[b], static_cast<double>(row[b]));
    }
    out.push_back(v);
  }
  return ParameterVector(std::move(out));
}

ParameterVector link_parameters(const ParameterVector& p, int k) {
  return ParameterMonomials::identity(p.r()).link(k).evaluate(p);
}

ParameterVector links_intersection_parameters(const ParameterVector& p, std::uint64_t k) {
  return ParameterMonomials::identity(p.r()).links_intersection(k).evaluate(p);
}

ParameterVector intersection_parameters(const ParameterVector& p, const ParameterVector& q) {
  if (p.size() != q.size()) fail(ErrorCode::InvalidArgument, "parameter lengths differ");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * q[i];
  return ParameterVector(std::move(out));
}

ParameterVector restriction_parameters(const ParameterVector& p) { return p; }

double DegreeLaw::pmf(std::uint64_t k) const {
  if (k > trials) return 0.0;
  LogProbability tail;
  tail.times_power(success, k);
  tail.times_complement_power(success, trials - k);
  if (tail.is_zero()) return 0.0;
  return std::exp(log_binomial(trials, k) + tail.log());
}

DegreeLaw degree_law(const ParameterVector& p, std::uint64_t n, int k) {
  if (k < 0 || k + 1 > p.r()) fail(ErrorCode::InvalidArgument, "degree law needs k + 1 <= r");
  if (n < static_cast<std::uint64_t>(k) + 1) fail(ErrorCode::InvalidArgument, "n <= k");
  double success = 1.0;
  for (int i = 0; i <= k + 1; ++i) {
    const std::uint64_t e = binomial(k + 1, i);
    if (e != 0) success *= std::pow(p[i], static_cast<double>(e));
  }
  return DegreeLaw{n - static_cast<std::uint64_t>(k) - 1, success};
}

double edge_degree_zero_bound(const ParameterVector& p, std::uint64_t n) {
  if (p.r() < 2) fail(ErrorCode::InvalidArgument, "edge degree law needs r >= 2");
  if (!(p.omega(n) > 1.0)) {
    fail(ErrorCode::PreconditionViolated, "requires omega = n * p_0 > 1");
  }
  const double link_empty_base = 1.0 - p[0] * p[1] * p[1] * p[2];
  const double tail = n >= 2 ? std::pow(link_empty_base, static_cast<double>(n - 2)) : 1.0;
  return binomial_real(n, 2) * p[0] * p[0] * p[1] * tail;
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "erdos_renyi") return Preset::ErdosRenyi;
  if (name == "linial_meshulam") return Preset::LinialMeshulam;
  if (name == "meshulam_wallach") return Preset::MeshulamWallach;
  if (name == "clique") return Preset::Clique;
  return std::nullopt;
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::ErdosRenyi: return "erdos_renyi";
    case Preset::LinialMeshulam: return "linial_meshulam";
    case Preset::MeshulamWallach: return "meshulam_wallach";
    case Preset::Clique: return "clique";
  }
  return "unknown";
}

ParameterVector preset(Preset preset, double p, std::optional<int> r) {
  std::vector<double> out;
  switch (preset) {
    case Preset::ErdosRenyi:
    case Preset::LinialMeshulam: {
      const int top = preset == Preset::ErdosRenyi ? 1 : 2;
      const int cap = r.value_or(top);
      if (cap < top) fail(ErrorCode::InvalidArgument, "r is below the model's dimension");
      out.assign(cap + 1, 0.0);
      for (int i = 0; i < top; ++i) out[i] = 1.0;
      out[top] = p;
      break;
    }
    case Preset::MeshulamWallach:
      if (!r || *r < 0) fail(ErrorCode::InvalidArgument, "meshulam_wallach needs r >= 0");
      out.assign(*r + 1, 1.0);
      out.back() = p;
      break;
    case Preset::Clique:
      if (!r || *r < 1) fail(ErrorCode::InvalidArgument, "clique needs r >= 1");
      out.assign(*r + 1, 1.0);
      out[1] = p;
      break;
  }
  return ParameterVector(std::move(out));
}

}  // namespace randcomplex
