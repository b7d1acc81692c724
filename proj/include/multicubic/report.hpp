#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "multicubic/combinatorics.hpp"
#include "multicubic/equation.hpp"
#include "multicubic/model_io.hpp"
#include "multicubic/stability.hpp"

namespace multicubic {

// Every numeric field is emitted as a string: "p/q" in exact mode, shortest
// round-trip decimal in float mode. Keys keep insertion order.

template <Scalar S>
Json scalar_json(const S& value) {
  return format_scalar(value);
}

template <Scalar S>
Json vec_json(const Vec<S>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(format_scalar(v));
  return out;
}

template <Scalar S>
Json sample_json(const EquationSample<S>& s) {
  Json out;
  out["x1"] = vec_json(s.x1);
  out["x2"] = vec_json(s.x2);
  return out;
}

Json identity_json(std::size_t n);

template <Scalar S>
Json residual_report_json(const ResidualReport<S>& report);

template <Scalar S>
Json power_check_json(const PowerCheck<S>& check);

template <Scalar S>
Json classification_json(const Classification<S>& c);

template <Scalar S>
Json hypothesis_json(const HypothesisCheck<S>& h);

template <Scalar S>
Json hyperstability_json(const HyperstabilityReport<S>& h);

template <Scalar S>
Json stabilization_json(const StabilizationReport<S>& report);

/// Header: x,f,C,phi_series,phi_closed,error,boundOK. Multi-coordinate values
/// are joined with ';'.
template <Scalar S>
std::string stabilization_csv(const StabilizationReport<S>& report);

Json norm_cube_json(const NormCubeDemo& demo);

enum class OutputFormat { json, csv };

OutputFormat parse_format(const std::string& text);

/// Writes to path, or to out when path is empty. Throws IoError.
void emit_text(const std::string& text, const std::optional<std::string>& path, std::ostream& out);

}  // namespace multicubic
