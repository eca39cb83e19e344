#include "randcomplex/measure.hpp"

#include <cmath>
#include <string>

#include "randcomplex/combinatorics.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

namespace {

void require_length(int r, const ParameterVector& p) {
  if (p.r() != r) {
    fail(ErrorCode::InvalidArgument, "parameter vector has length " + std::to_string(p.size()) +
                                         ", expected r + 1 = " + std::to_string(r + 1));
  }
}

}  // namespace

LogProbability measure(const FaceProfile& profile, const ParameterVector& p) {
  require_length(static_cast<int>(profile.f.size()) - 1, p);
  LogProbability out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.times_power(p[i], profile.f[i]);
    out.times_complement_power(p[i], profile.e[i]);
  }
  return out;
}

LogProbability measure(const SimplicialComplex& y, const ParameterVector& p) {
  require_length(y.r(), p);
  return measure(face_profile(y), p);
}

LogProbability containment_probability(const SimplicialComplex& a, const ParameterVector& p) {
  require_length(a.r(), p);
  LogProbability out;
  for (int d = 0; d <= a.r(); ++d) out.times_power(p[d], a.count(d));
  return out;
}

bool sandwich_admissible(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (!is_subcomplex(a, b)) return false;
  for (const auto& layer : external_faces(b)) {
    for (const auto& sigma : layer) {
      if (!boundary_in(a, sigma.view())) return false;
    }
  }
  return true;
}

LogProbability sandwich_probability(const SimplicialComplex& a, const SimplicialComplex& b,
                                    const ParameterVector& p) {
  require_length(a.r(), p);
  if (a.n() != b.n() || a.r() != b.r()) {
    fail(ErrorCode::InvalidArgument, "A and B live in different spaces (n, r)");
  }
  if (!is_subcomplex(a, b)) {
    fail(ErrorCode::PreconditionViolated, "sandwich requires A to be a subcomplex of B");
  }
  const auto external = external_faces(b);
  for (const auto& layer : external) {
    for (const auto& sigma : layer) {
      if (!boundary_in(a, sigma.view())) {
        fail(ErrorCode::PreconditionViolated,
             "boundary of an external face of B is not contained in A");
      }
    }
  }
  LogProbability out;
  for (int d = 0; d <= a.r(); ++d) {
    out.times_power(p[d], a.count(d));
    out.times_complement_power(p[d], external[d].size());
  }
  return out;
}

double vertex_count_pmf(std::uint64_t t, std::uint64_t n, const ParameterVector& p) {
  if (t > n) fail(ErrorCode::OutOfRange, "vertex count t exceeds n");
  // log C(n, t) is >= 0, so it stays outside the log-probability type.
  const double log_choose = log_binomial(n, t);
  LogProbability out;
  out.times_power(p[0], t);
  out.times_complement_power(p[0], n - t);
  if (out.is_zero()) return 0.0;
  return std::exp(log_choose + out.log());
}

LogProbability isolated_subcomplex_probability(const SimplicialComplex& s, std::uint64_t n,
                                               const ParameterVector& p) {
  require_length(s.r(), p);
  if (s.n() != n) fail(ErrorCode::InvalidArgument, "S must live over the ground set of size n");
  const std::uint64_t v = s.count(0);
  // In a 0-dimensional space there are no edges, so every vertex set is isolated.
  const double q1 = s.r() >= 1 ? p.q(1) : 1.0;
  const double base = p.q(0) + p[0] * std::pow(q1, static_cast<double>(v));
  LogProbability out;
  out.times_power(std::min(base, 1.0), n - v);
  for (int d = 0; d <= s.r(); ++d) out.times_power(p[d], s.count(d));
  return out;
}

double expected_edge_count(std::uint64_t n, const ParameterVector& p) {
  if (p.r() < 1) fail(ErrorCode::InvalidArgument, "expected edge count needs r >= 1");
  return binomial_real(n, 2) * p[0] * p[0] * p[1];
}

double reconstruct_from_containment(const ContainmentLookup& containment,
                                    const SimplicialComplex& a0) {
  std::vector<Simplex> external;
  for (auto& layer : external_faces(a0)) {
    for (auto& s : layer) external.push_back(std::move(s));
  }
  if (external.size() >= 63) {
    fail(ErrorCode::OutOfRange, "too many external faces for inclusion-exclusion");
  }
  // Sort by dimension so that adding a subset in order keeps boundaries present.
  std::stable_sort(external.begin(), external.end(),
                   [](const Simplex& a, const Simplex& b) { return a.dim() < b.dim(); });

  double total = 0.0;
  std::vector<Simplex> chosen;
  const std::uint64_t subsets = std::uint64_t{1} << external.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    chosen.clear();
    for (std::size_t i = 0; i < external.size(); ++i) {
      if (mask >> i & 1U) chosen.push_back(external[i]);
    }
    const auto a_s = with_faces(a0, chosen);
    const auto value = containment(a_s);
    if (!value) {
      fail(ErrorCode::InvalidArgument, "containment table has no entry for A0 u S");
    }
    total += (chosen.size() % 2 == 0 ? 1.0 : -1.0) * *value;
  }
  return total;
}

}  // namespace randcomplex
