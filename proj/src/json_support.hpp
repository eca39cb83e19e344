#pragma once

// nlohmann-based encoders shared by the lab and the C API.

#include <json.hpp>

#include "randcomplex/complex.hpp"

namespace randcomplex {

nlohmann::ordered_json complex_to_json(const SimplicialComplex& y);
SimplicialComplex complex_from_json_value(const nlohmann::ordered_json& doc);

}  // namespace randcomplex
