#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randcomplex/randcomplex.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rc_status status) {
  if (status != RC_OK) throw ApiError(rc_last_error());
}

struct CString {
  char* ptr = nullptr;
  ~CString() { rc_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct ComplexHandle {
  rc_complex* ptr = nullptr;
  ~ComplexHandle() { rc_complex_free(ptr); }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

int resolve_r(std::optional<int> r, const std::vector<double>& p) {
  return r.value_or(static_cast<int>(p.size()) - 1);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out);
  if (!file) throw ApiError("cannot open " + out);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// start:stop:step, or a single value.
void parse_axis(const std::string& text, std::vector<double>& axes) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(parse_list(item).front());
  if (parts.size() == 1) {
    axes.insert(axes.end(), {parts[0], parts[0], 1.0});
  } else if (parts.size() == 3) {
    axes.insert(axes.end(), parts.begin(), parts.end());
  } else {
    throw UsageError("axis must be VALUE or START:STOP:STEP, got '" + text + "'");
  }
}

int write_line(const char* line, void* user) {
  auto* out = static_cast<std::ostream*>(user);
  *out << line << '\n';
  return out->good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random simplicial complex laboratory"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.\n"
      "Chi-square tests pool bins with expected count < 5; default significance 0.01.\n"
      "RANDCOMPLEX_GUARD overrides the enumeration limit (default 10000000 complexes).");

  std::uint32_t n = 0;
  std::optional<int> r;
  std::vector<std::string> p_text;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::uint64_t count = 1;
  std::string out;
  std::string format = "json";
  unsigned workers = 1;

  const auto add_common = [&](CLI::App* cmd, bool needs_p) {
    cmd->add_option("--n", n, "ground-set size")->required();
    cmd->add_option("--r", r, "dimension cap (default: length of --p minus one)");
    auto* p = cmd->add_option("--p", p_text, "parameters p0,p1,...,pr");
    if (needs_p) p->required();
    cmd->add_option("--out", out, "output file (default stdout)");
  };

  auto* sample_cmd = app.add_subcommand("sample", "write sampled complexes as NDJSON");
  add_common(sample_cmd, true);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list a space, with probabilities if --p is given");
  add_common(enumerate_cmd, false);
  enumerate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* verify_cmd = app.add_subcommand("verify", "cross-check closed-form laws against enumeration");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string metric;
  std::optional<double> expect;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of an event or statistic");
  add_common(mc_cmd, true);
  mc_cmd->add_option("--metric", metric,
                     "connected | has_isolated_vertex | certified | empty | f0 | f1 | f2 | "
                     "isolated_vertex_count | dimension")
      ->required();
  mc_cmd->add_option("--seed", seed);
  mc_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--expect", expect, "fail (exit 1) unless this value lies in the 95% interval");

  std::vector<std::string> alphas;
  auto* sweep_cmd = app.add_subcommand("sweep", "phase-diagram sweep over exponents p_i = n^-alpha_i");
  sweep_cmd->add_option("--alphas", alphas, "per-axis START:STOP:STEP, comma separated (2 or 3 axes)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--n", n)->required();
  sweep_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--metric", metric,
                        "connected_fraction | certified_fraction | isolated_vertex_fraction | "
                        "mean_dimension | mean_f_vector")
      ->required();
  sweep_cmd->add_option("--seed", seed);
  sweep_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  sweep_cmd->add_option("--out", out);

  std::string in_path = "-";
  std::string what;
  auto* check_cmd = app.add_subcommand("check", "topology checks on NDJSON complexes");
  check_cmd->add_option("--in", in_path, "NDJSON input (default stdin)");
  check_cmd->add_option("--what", what)
      ->required()
      ->check(CLI::IsMember({"connected", "isolated", "certificate", "dimension"}));
  check_cmd->add_option("--out", out);

  int k = 0;
  std::optional<std::uint64_t> k_vertices;
  std::string q_text;
  auto* law_cmd = app.add_subcommand("law", "derived parameter laws");
  law_cmd->require_subcommand(1);
  auto* law_link = law_cmd->add_subcommand("link", "parameters of the link of a k-simplex");
  law_link->add_option("--p", p_text)->required();
  law_link->add_option("--k", k)->required();
  auto* law_intersect = law_cmd->add_subcommand(
      "intersect", "componentwise product with --q, or the intersection of --k vertex links");
  law_intersect->add_option("--p", p_text)->required();
  auto* q_opt = law_intersect->add_option("--q", q_text);
  law_intersect->add_option("--k", k_vertices)->excludes(q_opt);
  auto* law_degree = law_cmd->add_subcommand("degree", "degree law of a k-simplex");
  law_degree->add_option("--p", p_text)->required();
  law_degree->add_option("--n", n)->required();
  law_degree->add_option("--k", k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const auto single_p = [&]() {
      if (p_text.size() != 1) throw UsageError("--p must be given once");
      return parse_list(p_text.front());
    };

    if (*sample_cmd) {
      const auto p = single_p();
      std::ofstream file;
      std::ostream* sink = &std::cout;
      if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw ApiError("cannot open " + out);
        sink = &file;
      }
      check(rc_sample_stream(n, resolve_r(r, p), p.data(), p.size(), seed, count, write_line, sink));
      return kPass;
    }

    if (*enumerate_cmd) {
      std::vector<double> p;
      if (!p_text.empty()) p = single_p();
      if (!r && p.empty()) throw UsageError("enumerate needs --r or --p");
      CString doc;
      check(rc_enumerate_json(n, resolve_r(r, p), p.empty() ? nullptr : p.data(), p.size(), &doc.ptr));
      if (format == "json") {
        emit(Json::parse(doc.str()).dump(2), out);
        return kPass;
      }
      const auto parsed = Json::parse(doc.str());
      std::string csv;
      if (p.empty()) {
        csv = "index,complex\n";
        std::size_t i = 0;
        for (const auto& c : parsed["complexes"]) csv += std::to_string(i++) + ',' + csv_quote(c.dump()) + '\n';
      } else {
        csv = "index,probability,log_probability,complex\n";
        std::size_t i = 0;
        for (const auto& e : parsed["entries"]) {
          csv += std::to_string(i++) + ',' + e["probability"].dump() + ',' +
                 (e["log_probability"].is_null() ? "-inf" : e["log_probability"].dump()) + ',' +
                 csv_quote(e["complex"].dump()) + '\n';
        }
      }
      emit(csv, out);
      return kPass;
    }

    if (*verify_cmd) {
      std::vector<double> grid;
      std::size_t width = 0;
      for (const auto& row_text : p_text) {
        const auto row = parse_list(row_text);
        if (width != 0 && row.size() != width) throw UsageError("all --p vectors need the same length");
        width = row.size();
        grid.insert(grid.end(), row.begin(), row.end());
      }
      const int rr = r.value_or(static_cast<int>(width) - 1);
      if (static_cast<std::size_t>(rr) + 1 != width) throw UsageError("--p length must be r + 1");
      CString doc;
      int all_pass = 0;
      check(rc_verify_json(n, rr, grid.data(), p_text.size(), &doc.ptr, &all_pass));
      if (format == "json") {
        emit(doc.str(), out);
      } else {
        std::string csv = "metric,context,max_error,verdict,note\n";
        for (const auto& rep : Json::parse(doc.str())) {
          csv += rep["metric"].get<std::string>() + ',' + csv_quote(rep["context"].get<std::string>()) + ',' +
                 (rep.contains("max_error") ? rep["max_error"].dump() : "") + ',' +
                 (rep["verdict"].is_null() ? "skipped" : rep["verdict"].get<std::string>()) + ',' +
                 csv_quote(rep.value("note", "")) + '\n';
        }
        emit(csv, out);
      }
      return all_pass ? kPass : kFail;
    }

    if (*mc_cmd) {
      const auto p = single_p();
      CString doc;
      check(rc_monte_carlo_json(metric.c_str(), n, resolve_r(r, p), p.data(), p.size(), seed, trials,
                                workers, &doc.ptr));
      auto report = Json::parse(doc.str());
      if (expect) {
        const bool inside = report["ci_low"].get<double>() <= *expect && *expect <= report["ci_high"].get<double>();
        report["expected"] = *expect;
        report["verdict"] = inside ? "pass" : "fail";
        emit(report.dump(2), out);
        return inside ? kPass : kFail;
      }
      emit(report.dump(2), out);
      return kPass;
    }

    if (*sweep_cmd) {
      std::vector<double> axes;
      for (const auto& a : alphas) parse_axis(a, axes);
      CString doc;
      check(rc_sweep(axes.data(), axes.size() / 3, n, trials, metric.c_str(), seed, workers,
                     format == "csv" ? 0 : 1, &doc.ptr));
      emit(doc.str(), out);
      return kPass;
    }

    if (*check_cmd) {
      std::ifstream file;
      std::istream* in = &std::cin;
      if (in_path != "-") {
        file.open(in_path);
        if (!file) throw ApiError("cannot open " + in_path);
        in = &file;
      }
      std::string result;
      std::string line;
      std::size_t index = 0;
      while (std::getline(*in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ComplexHandle y;
        check(rc_complex_from_json(line.c_str(), &y.ptr));
        CString doc;
        check(rc_check_json(y.ptr, what.c_str(), &doc.ptr));
        auto j = Json::parse(doc.str());
        Json row;
        row["index"] = index++;
        row.update(j);
        result += row.dump() + '\n';
      }
      emit(result, out);
      return kPass;
    }

    if (*law_cmd) {
      const auto p = single_p();
      Json doc;
      if (*law_link) {
        std::vector<double> buf(p.size());
        std::size_t len = 0;
        check(rc_law_link(p.data(), p.size(), k, buf.data(), &len));
        buf.resize(len);
        doc["law"] = "link";
        doc["k"] = k;
        doc["p"] = buf;
      } else if (*law_intersect) {
        std::vector<double> buf(p.size());
        if (!q_text.empty()) {
          const auto q = parse_list(q_text);
          if (q.size() != p.size()) throw UsageError("--p and --q need the same length");
          check(rc_law_intersect(p.data(), q.data(), p.size(), buf.data()));
          doc["law"] = "intersect";
        } else {
          if (!k_vertices) throw UsageError("law intersect needs --q or --k");
          std::size_t len = 0;
          check(rc_law_links_intersection(p.data(), p.size(), *k_vertices, buf.data(), &len));
          buf.resize(len);
          doc["law"] = "links_intersection";
          doc["k"] = *k_vertices;
        }
        doc["p"] = buf;
      } else {
        std::uint64_t law_trials = 0;
        double success = 0.0;
        check(rc_law_degree(p.data(), p.size(), n, k, &law_trials, &success));
        doc["law"] = "degree";
        doc["distribution"] = "binomial";
        doc["trials"] = law_trials;
        doc["success"] = success;
        doc["mean"] = static_cast<double>(law_trials) * success;
      }
      emit(doc.dump(2), out);
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
