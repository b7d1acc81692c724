#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "multicubic/mappings.hpp"

namespace multicubic {

using Json = nlohmann::ordered_json;

/// Model file schema:
///   { "n": int, "m": int, "mode": "exact"|"float",
///     "terms": [ { "degrees": [int...], "coeff": ["p/q"...] } ],
///     "max_degree": int,                                    (optional)
///     "noise": { "kind": "none"|"power"|"product",          (optional)
///                "delta": "p/q", "alpha": "p/q",
///                "exponents": ["p/q"...], "seed": int } }
/// Rational literals are always strings.
MappingModel model_from_json(const Json& doc);
Json model_to_json(const MappingModel& model);

/// Throws IoError when the file cannot be read, ParseError (with field path)
/// when it does not match the schema.
MappingModel load_model(const std::filesystem::path& path);
void save_model(const MappingModel& model, const std::filesystem::path& path);

Rational rational_from_json(const Json& value, const std::string& where);
Json rational_to_json(const Rational& value);

/// A point is an array of rational strings.
Point<Rational> point_from_json(const Json& value, const std::string& where);
Json point_to_json(const Point<Rational>& point);

}  // namespace multicubic
