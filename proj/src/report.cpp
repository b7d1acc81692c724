#include "multicubic/report.hpp"

#include <fstream>
#include <sstream>

#include "multicubic/errors.hpp"

namespace multicubic {

namespace {

Json identity_check_json(const IdentityCheck& c) {
  Json out;
  out["computed"] = c.computed.get_str();
  out["expected"] = c.expected.get_str();
  out["equal"] = c.equal;
  return out;
}

template <Scalar S>
Json extended_json(const Extended<S>& e) {
  return e.str();
}

template <Scalar S>
std::string join(const Vec<S>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ';';
    out += format_scalar(values[i]);
  }
  return out;
}

}  // namespace

Json identity_json(std::size_t n) {
  Json row;
  row["n"] = n;
  row["total"] = identity_check_json(identity_total_weight(n));
  row["w2"] = identity_check_json(identity_w2(n));
  row["w1"] = identity_check_json(identity_w1(n));
  return row;
}

template <Scalar S>
Json residual_report_json(const ResidualReport<S>& report) {
  Json out;
  out["verdict"] = report.satisfied ? "Satisfied" : "Violated";
  out["maxResidual"] = format_scalar(report.max_residual);
  out["worstSample"] = report.worst_sample ? sample_json(*report.worst_sample) : Json(nullptr);
  out["samples"] = report.samples;
  if (report.first_failure != npos) out["firstFailure"] = report.first_failure;
  if (!report.per_sample.empty()) out["perSample"] = vec_json(report.per_sample);
  return out;
}

template <Scalar S>
Json power_check_json(const PowerCheck<S>& check) {
  Json out;
  out["holds"] = check.holds;
  out["points"] = check.points;
  out["worstRelative"] = format_scalar(check.worst_relative);
  out["worstDeviation"] = format_scalar(check.worst_deviation);
  if (check.worst_point) {
    out["worstPoint"] = vec_json(*check.worst_point);
    out["doubled"] = vec_json(check.doubled);
    out["scaled"] = vec_json(check.scaled);
  }
  return out;
}

template <Scalar S>
Json classification_json(const Classification<S>& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  if (c.sample) out["sample"] = sample_json(*c.sample);
  if (c.point) out["point"] = vec_json(*c.point);
  if (c.variable != npos) out["variable"] = c.variable + 1;
  if (!c.residual.empty()) out["residual"] = vec_json(c.residual);
  out["samplesChecked"] = c.samples_checked;
  out["pointsChecked"] = c.points_checked;
  out["junkimChecked"] = c.junkim_checked;
  return out;
}

template <Scalar S>
Json hypothesis_json(const HypothesisCheck<S>& h) {
  Json out;
  out["certifiedOnGrid"] = h.holds;
  out["samples"] = h.samples;
  out["singular"] = h.singular;
  out["worstRatio"] = extended_json(h.worst_ratio);
  if (h.witness) {
    out["witness"] = sample_json(*h.witness);
    out["residual"] = format_scalar(h.residual_at_witness);
    out["phi"] = format_scalar(h.phi_at_witness);
  }
  return out;
}

template <Scalar S>
Json hyperstability_json(const HyperstabilityReport<S>& h) {
  Json out;
  out["verdict"] = to_string(h.outcome);
  out["hypothesis"] = hypothesis_json(h.hypothesis);
  if (h.classification) out["classification"] = classification_json(*h.classification);
  return out;
}

template <Scalar S>
Json stabilization_json(const StabilizationReport<S>& report) {
  Json out;
  out["verdict"] = report.bound_satisfied && report.converged ? "BoundSatisfied" : "BoundViolated";
  out["beta"] = report.beta;
  out["iterations"] = report.iterations;
  out["boundSatisfied"] = report.bound_satisfied;
  out["converged"] = report.converged;
  out["hypothesis"] = hypothesis_json(report.hypothesis);
  out["hyperstabilityPathway"] = report.hyperstability_pathway;
  if (report.hyper) out["hyperstability"] = hyperstability_json(*report.hyper);
  out["leadingCoefficient"] = report.leading_coefficient ? vec_json(*report.leading_coefficient) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r;
    r["x"] = vec_json(row.x);
    r["f"] = vec_json(row.f);
    r["C"] = vec_json(row.c);
    r["phi_series"] = format_scalar(row.phi_series);
    r["phi_closed"] = row.phi_closed ? Json(format_scalar(*row.phi_closed)) : Json(nullptr);
    r["error"] = format_scalar(row.error);
    r["boundOK"] = row.bound_ok;
    r["converged"] = row.converged;
    if (row.saturated) r["saturated"] = true;
    r["trace"] = vec_json(row.trace);
    rows.push_back(std::move(r));
  }
  out["points"] = std::move(rows);
  return out;
}

template <Scalar S>
std::string stabilization_csv(const StabilizationReport<S>& report) {
  std::ostringstream out;
  out << "x,f,C,phi_series,phi_closed,error,boundOK\n";
  for (const auto& row : report.rows) {
    out << join(row.x) << ',' << join(row.f) << ',' << join(row.c) << ',' << format_scalar(row.phi_series) << ','
        << (row.phi_closed ? format_scalar(*row.phi_closed) : std::string()) << ',' << format_scalar(row.error) << ','
        << (row.bound_ok ? "true" : "false") << '\n';
  }
  return out.str();
}

Json norm_cube_json(const NormCubeDemo& demo) {
  Json out;
  out["verdict"] = demo.demonstrated ? "ConverseFails" : "NotDemonstrated";
  out["mapping"] = "h(a) = ||a||_2^3 * (1, 0) on R^2";
  out["doubling"] = power_check_json(demo.doubling);
  out["h(3,4)"] = vec_json(demo.h_at_34);
  out["h(6,8)"] = vec_json(demo.h_at_68);
  out["junkimResidual_x0_y10"] = vec_json(demo.residual_y10);
  out["junkimResidual_x0_y00"] = vec_json(demo.residual_y00);
  out["classification"] = classification_json(demo.classification);
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw ParseError("unknown output format '" + text + "' (expected json|csv)");
}

void emit_text(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw IoError("cannot write report to " + *path);
  file << text;
  if (!file) throw IoError("failed writing report to " + *path);
}

#define MULTICUBIC_INSTANTIATE(S)                                                \
  template Json residual_report_json(const ResidualReport<S>&);                  \
  template Json power_check_json(const PowerCheck<S>&);                          \
  template Json classification_json(const Classification<S>&);                   \
  template Json hypothesis_json(const HypothesisCheck<S>&);                      \
  template Json hyperstability_json(const HyperstabilityReport<S>&);             \
  template Json stabilization_json(const StabilizationReport<S>&);               \
  template std::string stabilization_csv(const StabilizationReport<S>&);

MULTICUBIC_INSTANTIATE(Rational)
MULTICUBIC_INSTANTIATE(double)

#undef MULTICUBIC_INSTANTIATE

}  // namespace multicubic
