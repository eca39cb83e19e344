#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include "randcomplex/complex_io.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/topology.hpp"

namespace randcomplex {

namespace {

using Json = nlohmann::ordered_json;

double z95() {
  static const double z = boost::math::quantile(boost::math::normal(), 0.975);
  return z;
}

Json report_json(const ExperimentReport& r) {
  Json out;
  out["metric"] = r.metric;
  if (!r.context.empty()) out["context"] = r.context;
  out["estimate"] = r.estimate;
  out["ci_low"] = r.ci_low;
  out["ci_high"] = r.ci_high;
  out["trials"] = r.trials;
  out["seed"] = r.seed;
  out["verdict"] = r.verdict ? Json(*r.verdict ? "pass" : "fail") : Json(nullptr);
  if (r.statistic) out["statistic"] = *r.statistic;
  if (r.p_value) out["p_value"] = *r.p_value;
  if (r.degrees_of_freedom) out["degrees_of_freedom"] = *r.degrees_of_freedom;
  if (r.max_error) out["max_error"] = *r.max_error;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

// Runs fn(t) for t in [0, count) over `workers` threads in contiguous blocks.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::uint64_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
  std::vector<std::thread> threads;
  const std::uint64_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * block;
    const std::uint64_t end = std::min(count, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::uint64_t t = begin; t < end; ++t) fn(t);
      } catch (...) {
        const std::lock_guard<std::mutex> guard(lock);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

struct MeanInterval {
  double mean;
  double low;
  double high;
};

MeanInterval normal_interval(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double half = z95() * sd / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) { return report_json(report).dump(); }

std::string reports_to_json(std::span<const ExperimentReport> reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  return out.dump(2);
}

const std::map<std::string, EventFn, std::less<>>& event_registry() {
  static const std::map<std::string, EventFn, std::less<>> events{
      {"connected", [](const SimplicialComplex& y) { return is_connected(y); }},
      {"has_isolated_vertex", [](const SimplicialComplex& y) { return !isolated_vertices(y).empty(); }},
      {"certified",
       [](const SimplicialComplex& y) {
         return certify_simply_connected(y).verdict == Verdict::Certified;
       }},
      {"empty", [](const SimplicialComplex& y) { return y.empty(); }},
  };
  return events;
}

const std::map<std::string, StatisticFn, std::less<>>& statistic_registry() {
  static const std::map<std::string, StatisticFn, std::less<>> stats{
      {"f0", [](const SimplicialComplex& y) { return static_cast<double>(y.count(0)); }},
      {"f1", [](const SimplicialComplex& y) { return static_cast<double>(y.count(1)); }},
      {"f2", [](const SimplicialComplex& y) { return static_cast<double>(y.count(2)); }},
      {"isolated_vertex_count",
       [](const SimplicialComplex& y) { return static_cast<double>(isolated_vertices(y).size()); }},
      {"dimension", [](const SimplicialComplex& y) { return static_cast<double>(y.dimension().value_or(-1)); }},
  };
  return stats;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) fail(ErrorCode::InvalidArgument, "zero trials");
  if (successes > trials) fail(ErrorCode::InvalidArgument, "successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z = z95();
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {std::clamp(std::min(center - half, phat), 0.0, 1.0),
          std::clamp(std::max(center + half, phat), 0.0, 1.0)};
}

ExperimentReport monte_carlo(std::string_view metric, const SampleConfig& config, unsigned workers) {
  validate(config);
  const auto& events = event_registry();
  const auto& stats = statistic_registry();
  const auto event = events.find(metric);
  const auto stat = stats.find(metric);
  if (event == events.end() && stat == stats.end()) {
    fail(ErrorCode::InvalidArgument, "unknown event or statistic: " + std::string(metric));
  }

  std::vector<double> values(config.count);
  parallel_for(config.count, workers, [&](std::uint64_t t) {
    const auto y = sample(config, t);
    values[t] = event != events.end() ? (event->second(y) ? 1.0 : 0.0) : stat->second(y);
  });

  ExperimentReport report;
  report.metric = std::string(metric);
  report.trials = config.count;
  report.seed = config.seed;
  if (event != events.end()) {
    std::uint64_t hits = 0;
    for (double v : values) hits += v != 0.0;
    report.estimate = static_cast<double>(hits) / static_cast<double>(config.count);
    std::tie(report.ci_low, report.ci_high) = wilson_interval(hits, config.count);
  } else {
    const auto ci = normal_interval(values);
    report.estimate = ci.mean;
    report.ci_low = ci.low;
    report.ci_high = ci.high;
  }
  return report;
}

ExperimentReport chi_square_gof(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities, double significance) {
  if (observed.size() != probabilities.size()) {
    fail(ErrorCode::InvalidArgument, "observed and expected bins differ in number");
  }
  if (!(significance > 0.0 && significance < 1.0)) {
    fail(ErrorCode::InvalidArgument, "significance must lie in (0, 1)");
  }
  std::uint64_t total = 0;
  double mass = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    total += observed[i];
    if (!(probabilities[i] >= 0.0)) fail(ErrorCode::InvalidArgument, "negative bin probability");
    mass += probabilities[i];
  }
  if (total == 0) fail(ErrorCode::InvalidArgument, "zero trials");
  if (std::abs(mass - 1.0) > 1e-9) fail(ErrorCode::InvalidArgument, "bin probabilities must sum to 1");

  const double n = static_cast<double>(total);
  std::vector<double> obs;
  std::vector<double> exp;
  double tail_obs = 0.0;
  double tail_exp = 0.0;
  bool impossible = false;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    if (probabilities[i] == 0.0 && observed[i] > 0) impossible = true;
    if (e >= kPoolingThreshold) {
      obs.push_back(static_cast<double>(observed[i]));
      exp.push_back(e);
    } else {
      tail_obs += static_cast<double>(observed[i]);
      tail_exp += e;
    }
  }
  if (tail_exp > 0.0) {
    if (tail_exp < kPoolingThreshold && !exp.empty()) {
      const auto smallest = std::min_element(exp.begin(), exp.end()) - exp.begin();
      obs[smallest] += tail_obs;
      exp[smallest] += tail_exp;
    } else {
      obs.push_back(tail_obs);
      exp.push_back(tail_exp);
    }
  }

  ExperimentReport report;
  report.metric = "chi_square";
  report.trials = total;
  report.degrees_of_freedom = obs.empty() ? 0 : obs.size() - 1;
  double statistic = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  }
  double p_value = 1.0;
  if (impossible) {
    statistic = std::numeric_limits<double>::infinity();
    p_value = 0.0;
    report.note = "observations in a zero-probability bin";
  } else if (*report.degrees_of_freedom > 0) {
    const boost::math::chi_squared dist(static_cast<double>(*report.degrees_of_freedom));
    p_value = boost::math::cdf(boost::math::complement(dist, statistic));
  }
  report.statistic = statistic;
  report.p_value = p_value;
  report.estimate = report.ci_low = report.ci_high = p_value;
  report.verdict = p_value >= significance;
  return report;
}

ExperimentReport chi_square_test(std::span<const SimplicialComplex> samples,
                                 const ExactDistribution& exact, double significance) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& y : samples) {
    if (y.n() != exact.n || y.r() != exact.r) {
      fail(ErrorCode::InvalidArgument, "sample space does not match the distribution");
    }
    ++counts[to_canonical_json(y)];
  }
  std::vector<std::uint64_t> observed;
  std::vector<double> probabilities;
  for (const auto& [key, prob] : exact.entries) {
    const auto it = counts.find(key);
    observed.push_back(it == counts.end() ? 0 : it->second);
    probabilities.push_back(prob);
  }
  for (const auto& [key, count] : counts) {
    if (!exact.entries.contains(key)) {
      observed.push_back(count);
      probabilities.push_back(0.0);
    }
  }
  return chi_square_gof(observed, probabilities, significance);
}

// --- sweeps -----------------------------------------------------------------

std::vector<double> SweepAxis::values() const {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
    fail(ErrorCode::InvalidArgument, "axis needs start <= stop and step > 0");
  }
  std::vector<double> out;
  for (std::uint64_t i = 0;; ++i) {
    const double v = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (v > stop + 1e-12) break;
    out.push_back(v);
  }
  return out;
}

std::span<const std::string_view> sweep_metrics() {
  static constexpr std::string_view metrics[] = {"connected_fraction", "certified_fraction",
                                                 "isolated_vertex_fraction", "mean_dimension",
                                                 "mean_f_vector"};
  return metrics;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, std::uint64_t seed, unsigned workers) {
  if (grid.axes.size() < 2 || grid.axes.size() > 3) {
    fail(ErrorCode::InvalidArgument, "a sweep needs axes alpha0, alpha1 and optionally alpha2");
  }
  if (grid.trials < 1) fail(ErrorCode::InvalidArgument, "trials per cell must be >= 1");
  if (grid.n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto metrics = sweep_metrics();
  if (std::find(metrics.begin(), metrics.end(), grid.metric) == metrics.end()) {
    fail(ErrorCode::InvalidArgument, "unknown sweep metric: " + grid.metric);
  }
  std::vector<std::vector<double>> axis_values;
  for (const auto& axis : grid.axes) {
    axis_values.push_back(axis.values());
    for (double a : axis_values.back()) {
      if (a < 0.0) fail(ErrorCode::InvalidArgument, "exponents must be >= 0");
    }
  }
  const int r = static_cast<int>(grid.axes.size()) - 1;

  // Cells in row-major order, alpha_0 slowest.
  std::vector<std::vector<double>> cells{{}};
  for (const auto& values : axis_values) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : cells) {
      for (double v : values) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    cells = std::move(next);
  }

  std::vector<SweepRow> rows(cells.size());
  parallel_for(cells.size(), workers, [&](std::uint64_t c) {
    const auto& alpha = cells[c];
    std::vector<double> p;
    for (double a : alpha) p.push_back(std::pow(static_cast<double>(grid.n), -a));
    SampleConfig config{grid.n, r, ParameterVector(p), derive_seed(seed, c), grid.trials};

    SweepRow row;
    row.alpha = alpha;
    row.n = grid.n;
    row.trials = grid.trials;
    row.metric = grid.metric;
    // A missing alpha_2 axis means no triangles, i.e. alpha_2 = infinity.
    RegimePoint point{alpha};
    if (point.alpha.size() < 3) point.alpha.push_back(1e300);
    row.regime = std::string(to_string(regime_classify(point)));

    if (grid.metric == "mean_f_vector") {
      std::vector<std::vector<double>> f(r + 1, std::vector<double>(grid.trials));
      for (std::uint64_t t = 0; t < grid.trials; ++t) {
        const auto y = sample(config, t);
        for (int d = 0; d <= r; ++d) f[d][t] = static_cast<double>(y.count(d));
      }
      for (const auto& values : f) {
        const auto ci = normal_interval(values);
        row.estimate.push_back(ci.mean);
        row.ci_low.push_back(ci.low);
        row.ci_high.push_back(ci.high);
      }
    } else if (grid.metric == "mean_dimension") {
      std::vector<double> values(grid.trials);
      for (std::uint64_t t = 0; t < grid.trials; ++t) {
        values[t] = static_cast<double>(sample(config, t).dimension().value_or(-1));
      }
      const auto ci = normal_interval(values);
      row.estimate = {ci.mean};
      row.ci_low = {ci.low};
      row.ci_high = {ci.high};
    } else {
      const std::string_view event = grid.metric == "connected_fraction"   ? "connected"
                                     : grid.metric == "certified_fraction" ? "certified"
                                                                           : "has_isolated_vertex";
      const auto& fn = event_registry().find(event)->second;
      std::uint64_t hits = 0;
      for (std::uint64_t t = 0; t < grid.trials; ++t) hits += fn(sample(config, t)) ? 1 : 0;
      const auto [low, high] = wilson_interval(hits, grid.trials);
      row.estimate = {static_cast<double>(hits) / static_cast<double>(grid.trials)};
      row.ci_low = {low};
      row.ci_high = {high};
    }
    rows[c] = std::move(row);
  });
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  const auto join = [](const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ';';
      out += format_double(values[i]);
    }
    return out;
  };
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (i < row.alpha.size()) out += format_double(row.alpha[i]);
      out += ',';
    }
    out += std::to_string(row.n) + ',' + std::to_string(row.trials) + ',' + row.metric + ',' +
           join(row.estimate) + ',' + join(row.ci_low) + ',' + join(row.ci_high) + ',' +
           row.regime + '\n';
  }
  return out;
}

}  // namespace randcomplex
