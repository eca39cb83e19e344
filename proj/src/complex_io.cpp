#include "randcomplex/complex_io.hpp"

#include <json.hpp>

#include "json_support.hpp"
#include "randcomplex/error.hpp"

namespace randcomplex {

std::string to_canonical_json(const SimplicialComplex& y) { return complex_to_json(y).dump(); }

SimplicialComplex complex_from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return complex_from_json_value(doc);
}

nlohmann::ordered_json complex_to_json(const SimplicialComplex& y) {
  nlohmann::ordered_json faces = nlohmann::ordered_json::array();
  for (const auto& s : y.maximal_faces()) faces.push_back(s.vertices());
  nlohmann::ordered_json out;
  out["n"] = y.n();
  out["r"] = y.r();
  out["maximal_faces"] = std::move(faces);
  return out;
}

SimplicialComplex complex_from_json_value(const nlohmann::ordered_json& doc) {
  const auto bad = [](const std::string& why) { fail(ErrorCode::ParseError, why); };
  if (!doc.is_object()) bad("complex must be a JSON object");
  for (const char* key : {"n", "r", "maximal_faces"}) {
    if (!doc.contains(key)) bad(std::string("missing field '") + key + "'");
  }
  if (!doc["n"].is_number_unsigned()) bad("'n' must be a nonnegative integer");
  if (!doc["r"].is_number_integer() || doc["r"].get<long long>() < 0) {
    bad("'r' must be a nonnegative integer");
  }
  if (!doc["maximal_faces"].is_array()) bad("'maximal_faces' must be an array");

  const auto n = doc["n"].get<std::uint64_t>();
  if (n > 0xFFFFFFFFu) bad("'n' is too large");
  const auto r = doc["r"].get<long long>();
  if (r > 1024) bad("'r' is too large");

  std::vector<Simplex> generators;
  for (const auto& face : doc["maximal_faces"]) {
    if (!face.is_array() || face.empty()) bad("each face must be a nonempty array");
    std::vector<Vertex> vs;
    for (const auto& v : face) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xFFFFFFFFu) {
        bad("vertex labels must be positive integers");
      }
      vs.push_back(v.get<Vertex>());
    }
    try {
      generators.emplace_back(std::move(vs));
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  return build_complex(static_cast<std::uint32_t>(n), static_cast<int>(r), generators);
}

}  // namespace randcomplex
