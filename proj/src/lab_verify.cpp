#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <unordered_map>

#include "lab_space.hpp"
#include "randcomplex/combinatorics.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/laws.hpp"
#include "randcomplex/measure.hpp"

namespace randcomplex {

namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kLawTolerance = 1e-10;
constexpr std::size_t kSandwichLimit = 1000;

std::string describe(std::uint32_t n, int r, const ParameterVector& p) {
  std::ostringstream out;
  out << "n=" << n << " r=" << r << " p=(";
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
  out << ")";
  return out.str();
}

ExperimentReport make_report(std::string metric, const std::string& context, double error,
                             std::uint64_t cases, double tolerance) {
  ExperimentReport r;
  r.metric = std::move(metric);
  r.context = context;
  r.estimate = r.ci_low = r.ci_high = error;
  r.max_error = error;
  r.trials = cases;
  r.verdict = error <= tolerance;
  return r;
}

ExperimentReport skipped(std::string metric, const std::string& context, std::string why) {
  ExperimentReport r;
  r.metric = std::move(metric);
  r.context = context;
  r.note = "skipped: " + std::move(why);
  return r;
}

class Suite {
 public:
  Suite(std::uint32_t n, int r, const ParameterVector& p)
      : n_(n), r_(r), p_(p), space_(n, r, enumeration_guard()), context_(describe(n, r, p)) {
    const auto& masks = space_.masks();
    for (std::size_t i = 0; i < masks.size(); ++i) {
      index_.emplace(masks[i], i);
      complexes_.push_back(space_.decode(masks[i]));
      prob_.push_back(measure(complexes_.back(), p).probability());
    }
    containment_.assign(masks.size(), 0.0);
    for (std::size_t a = 0; a < masks.size(); ++a) {
      for (std::size_t y = 0; y < masks.size(); ++y) {
        if ((masks[a] & ~masks[y]) == 0) containment_[a] += prob_[y];
      }
    }
  }

  void run(std::vector<ExperimentReport>& out) {
    out.push_back(total_mass());
    out.push_back(containment());
    out.push_back(sandwich());
    out.push_back(characterisation());
    out.push_back(link_law(0));
    out.push_back(link_law(1));
    out.push_back(links_intersection());
    out.push_back(intersect_with());
    out.push_back(drop_vertex());
    out.push_back(isolated());
    out.push_back(vertex_count());
    out.push_back(expected_edges());
    out.push_back(degree(0));
    out.push_back(degree(1));
    out.push_back(edge_degree_zero());
  }

 private:
  std::size_t size() const { return complexes_.size(); }
  std::uint64_t mask(std::size_t i) const { return space_.masks()[i]; }

  const ExactDistribution& distribution() {
    if (!dist_) dist_ = enumerate_distribution(n_, r_, p_);
    return *dist_;
  }

  ExperimentReport total_mass() {
    double sum = 0.0;
    for (double v : prob_) sum += v;
    return make_report("total_mass", context_, std::abs(sum - 1.0), size(), kExactTolerance);
  }

  ExperimentReport containment() {
    double err = 0.0;
    for (std::size_t a = 0; a < size(); ++a) {
      err = std::max(err, std::abs(containment_probability(complexes_[a], p_).probability() -
                                   containment_[a]));
    }
    return make_report("containment", context_, err, size(), kExactTolerance);
  }

  ExperimentReport sandwich() {
    if (size() > kSandwichLimit) {
      return skipped("sandwich", context_, "the pair check is cubic in the space size; run with n <= 4");
    }
    double err = 0.0;
    std::uint64_t cases = 0;
    std::uint64_t unguarded = 0;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if ((mask(a) & ~mask(b)) != 0) continue;
        if (!sandwich_admissible(complexes_[a], complexes_[b])) {
          try {
            (void)sandwich_probability(complexes_[a], complexes_[b], p_);
            ++unguarded;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::PreconditionViolated) ++unguarded;
          }
          continue;
        }
        double sum = 0.0;
        for (std::size_t y = 0; y < size(); ++y) {
          if ((mask(a) & ~mask(y)) == 0 && (mask(y) & ~mask(b)) == 0) sum += prob_[y];
        }
        err = std::max(err, std::abs(sandwich_probability(complexes_[a], complexes_[b], p_).probability() - sum));
        ++cases;
      }
    }
    auto report = make_report("sandwich", context_, err, cases, kExactTolerance);
    if (unguarded > 0) {
      report.verdict = false;
      report.note = std::to_string(unguarded) + " inadmissible pairs were not rejected";
    }
    return report;
  }

  ExperimentReport characterisation() {
    const ContainmentLookup lookup = [&](const SimplicialComplex& a) -> std::optional<double> {
      const auto it = index_.find(space_.encode(a));
      if (it == index_.end()) return std::nullopt;
      return containment_[it->second];
    };
    double err = 0.0;
    for (std::size_t y = 0; y < size(); ++y) {
      err = std::max(err, std::abs(reconstruct_from_containment(lookup, complexes_[y]) - prob_[y]));
    }
    return make_report("characterisation", context_, err, size(), kLawTolerance);
  }

  ExperimentReport link_law(int k) {
    const std::string metric = k == 0 ? "link_vertex" : "link_edge";
    if (k >= r_) return skipped(metric, context_, "needs r > dim sigma");
    if (n_ < static_cast<std::uint32_t>(k) + 1) return skipped(metric, context_, "needs n > dim sigma");
    double norm = 1.0;
    for (int i = 0; i <= k; ++i) norm *= std::pow(p_[i], static_cast<double>(binomial(k + 1, i + 1)));
    if (norm == 0.0) return skipped(metric, context_, "conditioning event has probability zero");
    const Simplex sigma = k == 0 ? Simplex{1} : Simplex{1, 2};
    const auto pushed = exact_pushforward(distribution(), pushforward::LinkOfSimplex{sigma});
    const auto target = enumerate_distribution(n_ - k - 1, r_ - k - 1, link_parameters(p_, k));
    return make_report(metric, context_, max_abs_difference(pushed, target), target.entries.size(),
                       kLawTolerance);
  }

  ExperimentReport links_intersection() {
    const std::string metric = "links_intersection";
    if (r_ < 1 || n_ < 3) return skipped(metric, context_, "needs r >= 1 and n >= 3");
    if (p_[0] == 0.0) return skipped(metric, context_, "conditioning event has probability zero");
    const auto pushed = exact_pushforward(distribution(), pushforward::IntersectLinks{{1, 2}});
    const auto target = enumerate_distribution(n_ - 2, r_ - 1, links_intersection_parameters(p_, 2));
    return make_report(metric, context_, max_abs_difference(pushed, target), target.entries.size(),
                       kLawTolerance);
  }

  ExperimentReport intersect_with() {
    std::vector<double> other(p_.size());
    for (std::size_t i = 0; i < other.size(); ++i) other[i] = i % 2 == 0 ? 0.75 : 0.4;
    const ParameterVector q(other);
    const auto pushed = exact_pushforward(distribution(), pushforward::IntersectWith{q});
    const auto target = enumerate_distribution(n_, r_, intersection_parameters(p_, q));
    auto report = make_report("intersect_with", context_, max_abs_difference(pushed, target),
                              target.entries.size(), kLawTolerance);
    report.note = "second parameter vector (0.75, 0.4, ...)";
    return report;
  }

  ExperimentReport drop_vertex() {
    if (n_ < 1) return skipped("drop_vertex", context_, "needs n >= 1");
    const auto pushed = exact_pushforward(distribution(), pushforward::DropVertex{});
    const auto target = enumerate_distribution(n_ - 1, r_, restriction_parameters(p_));
    return make_report("drop_vertex", context_, max_abs_difference(pushed, target),
                       target.entries.size(), kLawTolerance);
  }

  ExperimentReport isolated() {
    std::vector<SimplicialComplex> shapes;
    shapes.push_back(build_complex(n_, r_, {Simplex{1}}));
    if (r_ >= 1 && n_ >= 2) shapes.push_back(build_complex(n_, r_, {Simplex{1, 2}}));
    if (r_ >= 1 && n_ >= 3) shapes.push_back(build_complex(n_, r_, {Simplex{1, 2}, Simplex{2, 3}}));
    if (n_ < 1) return skipped("isolated_subcomplex", context_, "needs n >= 1");
    double err = 0.0;
    for (const auto& s : shapes) {
      const std::uint64_t sm = space_.encode(s);
      const auto vs = s.vertices();
      double sum = 0.0;
      for (std::size_t y = 0; y < size(); ++y) {
        if ((sm & ~mask(y)) != 0) continue;
        bool cut = false;
        for (std::size_t e = 0; e < complexes_[y].count(1) && !cut; ++e) {
          const auto edge = complexes_[y].face(1, e);
          const bool a = std::binary_search(vs.begin(), vs.end(), edge[0]);
          const bool b = std::binary_search(vs.begin(), vs.end(), edge[1]);
          cut = a != b;
        }
        if (!cut) sum += prob_[y];
      }
      err = std::max(err, std::abs(isolated_subcomplex_probability(s, n_, p_).probability() - sum));
    }
    auto report = make_report("isolated_subcomplex", context_, err, shapes.size(), kExactTolerance);
    report.note = "S = vertex, edge, 2-path (as far as n and r allow)";
    return report;
  }

  ExperimentReport vertex_count() {
    std::vector<double> marginal(n_ + 1, 0.0);
    for (std::size_t y = 0; y < size(); ++y) marginal[complexes_[y].count(0)] += prob_[y];
    double err = 0.0;
    for (std::uint32_t t = 0; t <= n_; ++t) {
      err = std::max(err, std::abs(vertex_count_pmf(t, n_, p_) - marginal[t]));
    }
    return make_report("vertex_count_pmf", context_, err, n_ + 1, kExactTolerance);
  }

  ExperimentReport expected_edges() {
    if (r_ < 1) return skipped("expected_edges", context_, "needs r >= 1");
    double sum = 0.0;
    for (std::size_t y = 0; y < size(); ++y) sum += prob_[y] * static_cast<double>(complexes_[y].count(1));
    return make_report("expected_edges", context_, std::abs(expected_edge_count(n_, p_) - sum), 1,
                       kExactTolerance);
  }

  ExperimentReport degree(int k) {
    const std::string metric = k == 0 ? "degree_law_vertex" : "degree_law_edge";
    if (k + 1 > r_ || n_ < static_cast<std::uint32_t>(k) + 1) {
      return skipped(metric, context_, "needs k + 1 <= r and n > k");
    }
    const Simplex sigma = k == 0 ? Simplex{1} : Simplex{1, 2};
    double norm = 1.0;
    for (int i = 0; i <= k; ++i) norm *= std::pow(p_[i], static_cast<double>(binomial(k + 1, i + 1)));
    if (norm == 0.0) return skipped(metric, context_, "conditioning event has probability zero");
    const auto law = degree_law(p_, n_, k);
    std::vector<double> conditional(law.trials + 1, 0.0);
    for (std::size_t y = 0; y < size(); ++y) {
      if (!complexes_[y].contains(sigma)) continue;
      conditional[randcomplex::degree(complexes_[y], sigma)] += prob_[y] / norm;
    }
    double err = 0.0;
    for (std::uint64_t j = 0; j <= law.trials; ++j) err = std::max(err, std::abs(law.pmf(j) - conditional[j]));
    return make_report(metric, context_, err, law.trials + 1, kLawTolerance);
  }

  ExperimentReport edge_degree_zero() {
    const std::string metric = "edge_degree_zero";
    if (r_ < 2) return skipped(metric, context_, "needs r >= 2");
    if (!(p_.omega(n_) > 1.0)) return skipped(metric, context_, "needs n p_0 > 1");
    double sum = 0.0;
    for (std::size_t y = 0; y < size(); ++y) {
      const auto& c = complexes_[y];
      std::uint64_t lonely = 0;
      for (std::size_t e = 0; e < c.count(1); ++e) {
        const auto edge = c.face(1, e);
        if (randcomplex::degree(c, Simplex(edge)) == 0) ++lonely;
      }
      sum += prob_[y] * static_cast<double>(lonely);
    }
    return make_report(metric, context_, std::abs(edge_degree_zero_bound(p_, n_) - sum), 1,
                       kExactTolerance);
  }

  std::uint32_t n_;
  int r_;
  ParameterVector p_;
  detail::MaskSpace space_;
  std::string context_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<SimplicialComplex> complexes_;
  std::vector<double> prob_;
  std::vector<double> containment_;
  std::optional<ExactDistribution> dist_;
};

}  // namespace

std::vector<ExperimentReport> verify_identities(std::uint32_t n, int r,
                                                std::span<const ParameterVector> grid) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "parameter grid is empty");
  for (const auto& p : grid) {
    if (p.r() != r) fail(ErrorCode::InvalidArgument, "parameter vector length must be r + 1");
  }
  std::vector<ExperimentReport> out;
  for (const auto& p : grid) Suite(n, r, p).run(out);
  return out;
}

}  // namespace randcomplex
