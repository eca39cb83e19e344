#include "randcomplex/randcomplex.h"

#include <cstring>
#include <exception>
#include <string>

#include <json.hpp>

#include "json_support.hpp"
#include "randcomplex/complex.hpp"
#include "randcomplex/complex_io.hpp"
#include "randcomplex/error.hpp"
#include "randcomplex/lab.hpp"
#include "randcomplex/laws.hpp"
#include "randcomplex/measure.hpp"
#include "randcomplex/sampler.hpp"
#include "randcomplex/topology.hpp"

struct rc_complex {
  randcomplex::SimplicialComplex value;
};

namespace {

using randcomplex::ErrorCode;
using Json = nlohmann::ordered_json;

thread_local std::string last_error;

template <typename Fn>
rc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return RC_OK;
  } catch (const randcomplex::Error& e) {
    last_error = e.what();
    return static_cast<rc_status>(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return RC_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RC_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) randcomplex::fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

randcomplex::ParameterVector params(const double* p, std::size_t len) {
  require(p, "parameter array");
  if (len == 0) randcomplex::fail(ErrorCode::InvalidArgument, "empty parameter vector");
  return randcomplex::ParameterVector(std::vector<double>(p, p + len));
}

void write_vector(const randcomplex::ParameterVector& v, double* out, std::size_t* out_len) {
  require(out, "output array");
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  if (out_len != nullptr) *out_len = v.size();
}

randcomplex::SampleConfig config(std::uint32_t n, int r, const double* p, std::size_t len,
                                 std::uint64_t seed, std::uint64_t count) {
  return randcomplex::SampleConfig{n, r, params(p, len), seed, count};
}

}  // namespace

extern "C" {

const char* rc_last_error(void) { return last_error.c_str(); }

void rc_string_free(char* s) { delete[] s; }

rc_status rc_complex_build(uint32_t n, int r, const uint32_t* vertices, const size_t* sizes,
                           size_t generators, rc_complex** out) {
  return guarded([&] {
    require(out, "out");
    if (generators > 0) {
      require(vertices, "vertices");
      require(sizes, "sizes");
    }
    std::vector<randcomplex::Simplex> gens;
    std::size_t at = 0;
    for (std::size_t g = 0; g < generators; ++g) {
      gens.emplace_back(std::span<const randcomplex::Vertex>(vertices + at, sizes[g]));
      at += sizes[g];
    }
    *out = new rc_complex{randcomplex::build_complex(n, r, gens)};
  });
}

rc_status rc_complex_from_json(const char* json, rc_complex** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new rc_complex{randcomplex::complex_from_json(json)};
  });
}

rc_status rc_complex_to_json(const rc_complex* y, char** out) {
  return guarded([&] {
    require(y, "complex");
    require(out, "out");
    *out = copy_string(randcomplex::to_canonical_json(y->value));
  });
}

void rc_complex_free(rc_complex* y) { delete y; }

uint32_t rc_complex_n(const rc_complex* y) { return y == nullptr ? 0 : y->value.n(); }

int rc_complex_r(const rc_complex* y) { return y == nullptr ? -1 : y->value.r(); }

rc_status rc_complex_face_profile(const rc_complex* y, uint64_t* f, uint64_t* e) {
  return guarded([&] {
    require(y, "complex");
    require(f, "f");
    require(e, "e");
    const auto profile = randcomplex::face_profile(y->value);
    for (std::size_t i = 0; i < profile.f.size(); ++i) {
      f[i] = profile.f[i];
      e[i] = profile.e[i];
    }
  });
}

rc_status rc_measure_log(const rc_complex* y, const double* p, size_t len, double* out) {
  return guarded([&] {
    require(y, "complex");
    require(out, "out");
    *out = randcomplex::measure(y->value, params(p, len)).log();
  });
}

rc_status rc_sample(uint32_t n, int r, const double* p, size_t len, uint64_t seed, uint64_t index,
                    rc_complex** out) {
  return guarded([&] {
    require(out, "out");
    auto cfg = config(n, r, p, len, seed, index + 1);
    *out = new rc_complex{randcomplex::sample(cfg, index)};
  });
}

rc_status rc_sample_stream(uint32_t n, int r, const double* p, size_t len, uint64_t seed,
                           uint64_t count, rc_line_fn fn, void* user) {
  return guarded([&] {
    require(reinterpret_cast<const void*>(fn), "callback");
    randcomplex::for_each_sample(config(n, r, p, len, seed, count),
                                 [&](std::uint64_t, const randcomplex::SimplicialComplex& y) {
                                   if (fn(randcomplex::to_canonical_json(y).c_str(), user) != 0) {
                                     randcomplex::fail(ErrorCode::Io, "sample consumer stopped");
                                   }
                                 });
  });
}

rc_status rc_check_json(const rc_complex* y, const char* what, char** out) {
  return guarded([&] {
    require(y, "complex");
    require(what, "what");
    require(out, "out");
    const std::string_view w(what);
    Json doc;
    if (w == "connected") {
      const auto components = randcomplex::connected_components(y->value);
      doc["connected"] = components.size() == 1;
      doc["components"] = components.size();
    } else if (w == "isolated") {
      doc["isolated_vertices"] = randcomplex::isolated_vertices(y->value);
    } else if (w == "certificate") {
      const auto cert = randcomplex::certify_simply_connected(y->value);
      doc["verdict"] = randcomplex::to_string(cert.verdict);
      doc["failed_condition"] =
          cert.failed_condition ? Json(randcomplex::to_string(*cert.failed_condition)) : Json(nullptr);
      doc["witness"] = cert.witness;
    } else if (w == "dimension") {
      const auto d = y->value.dimension();
      doc["dimension"] = d ? Json(*d) : Json(nullptr);
    } else {
      randcomplex::fail(ErrorCode::InvalidArgument, "unknown check: " + std::string(w));
    }
    *out = copy_string(doc.dump());
  });
}

rc_status rc_law_link(const double* p, size_t len, int k, double* out, size_t* out_len) {
  return guarded([&] { write_vector(randcomplex::link_parameters(params(p, len), k), out, out_len); });
}

rc_status rc_law_links_intersection(const double* p, size_t len, uint64_t k, double* out,
                                    size_t* out_len) {
  return guarded([&] {
    write_vector(randcomplex::links_intersection_parameters(params(p, len), k), out, out_len);
  });
}

rc_status rc_law_intersect(const double* p, const double* q, size_t len, double* out) {
  return guarded([&] {
    write_vector(randcomplex::intersection_parameters(params(p, len), params(q, len)), out, nullptr);
  });
}

rc_status rc_law_degree(const double* p, size_t len, uint64_t n, int k, uint64_t* trials,
                        double* success) {
  return guarded([&] {
    require(trials, "trials");
    require(success, "success");
    const auto law = randcomplex::degree_law(params(p, len), n, k);
    *trials = law.trials;
    *success = law.success;
  });
}

rc_status rc_enumerate_json(uint32_t n, int r, const double* p, size_t len, char** out) {
  return guarded([&] {
    require(out, "out");
    Json doc;
    doc["n"] = n;
    doc["r"] = r;
    if (p == nullptr) {
      const auto space = randcomplex::enumerate_space(n, r);
      doc["count"] = space.size();
      Json list = Json::array();
      for (const auto& y : space) list.push_back(randcomplex::complex_to_json(y));
      doc["complexes"] = std::move(list);
    } else {
      const auto pv = params(p, len);
      const auto space = randcomplex::enumerate_space(n, r);
      doc["p"] = pv.values();
      doc["count"] = space.size();
      Json list = Json::array();
      double total = 0.0;
      for (const auto& y : space) {
        const auto lp = randcomplex::measure(y, pv);
        total += lp.probability();
        Json entry;
        entry["complex"] = randcomplex::complex_to_json(y);
        entry["log_probability"] = lp.is_zero() ? Json(nullptr) : Json(lp.log());
        entry["probability"] = lp.probability();
        list.push_back(std::move(entry));
      }
      doc["total"] = total;
      doc["entries"] = std::move(list);
    }
    *out = copy_string(doc.dump());
  });
}

rc_status rc_verify_json(uint32_t n, int r, const double* grid, size_t rows, char** out,
                         int* all_pass) {
  return guarded([&] {
    require(out, "out");
    require(grid, "grid");
    if (r < 0) randcomplex::fail(ErrorCode::InvalidArgument, "r must be >= 0");
    const std::size_t width = static_cast<std::size_t>(r) + 1;
    std::vector<randcomplex::ParameterVector> ps;
    for (std::size_t i = 0; i < rows; ++i) ps.push_back(params(grid + i * width, width));
    const auto reports = randcomplex::verify_identities(n, r, ps);
    bool pass = true;
    for (const auto& rep : reports) pass = pass && rep.verdict.value_or(true);
    if (all_pass != nullptr) *all_pass = pass ? 1 : 0;
    *out = copy_string(randcomplex::reports_to_json(reports));
  });
}

rc_status rc_monte_carlo_json(const char* metric, uint32_t n, int r, const double* p, size_t len,
                              uint64_t seed, uint64_t trials, unsigned workers, char** out) {
  return guarded([&] {
    require(metric, "metric");
    require(out, "out");
    const auto report = randcomplex::monte_carlo(metric, config(n, r, p, len, seed, trials), workers);
    *out = copy_string(randcomplex::report_to_json(report));
  });
}

rc_status rc_sweep(const double* axes, size_t axis_count, uint32_t n, uint64_t trials,
                   const char* metric, uint64_t seed, unsigned workers, int format, char** out) {
  return guarded([&] {
    require(axes, "axes");
    require(metric, "metric");
    require(out, "out");
    randcomplex::SweepGrid grid;
    for (std::size_t i = 0; i < axis_count; ++i) {
      grid.axes.push_back({axes[3 * i], axes[3 * i + 1], axes[3 * i + 2]});
    }
    grid.n = n;
    grid.trials = trials;
    grid.metric = metric;
    const auto rows = randcomplex::sweep(grid, seed, workers);
    if (format == 0) {
      *out = copy_string(randcomplex::sweep_csv(rows));
      return;
    }
    if (format != 1) randcomplex::fail(ErrorCode::InvalidArgument, "format must be 0 (csv) or 1 (json)");
    Json doc = Json::array();
    for (const auto& row : rows) {
      Json j;
      j["alpha"] = row.alpha;
      j["n"] = row.n;
      j["trials"] = row.trials;
      j["metric"] = row.metric;
      j["estimate"] = row.estimate;
      j["ci_low"] = row.ci_low;
      j["ci_high"] = row.ci_high;
      j["regime"] = row.regime;
      doc.push_back(std::move(j));
    }
    *out = copy_string(doc.dump(2));
  });
}

}  // extern "C"
