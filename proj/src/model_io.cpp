#include "multicubic/model_io.hpp"

#include <fstream>
#include <sstream>

#include "multicubic/errors.hpp"

namespace multicubic {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

long long require_int(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<long long>();
}

std::string noise_kind_name(NoiseSpec::Kind kind) {
  switch (kind) {
    case NoiseSpec::Kind::none:
      return "none";
    case NoiseSpec::Kind::power:
      return "power";
    case NoiseSpec::Kind::product:
      return "product";
  }
  return "none";
}

NoiseSpec noise_from_json(const Json& doc, const std::string& where) {
  NoiseSpec spec;
  const std::string kind = require(doc, "kind", where).get<std::string>();
  if (kind == "none") return spec;
  if (kind == "power") {
    spec.kind = NoiseSpec::Kind::power;
    spec.alpha = rational_from_json(require(doc, "alpha", where), where + ".alpha");
  } else if (kind == "product") {
    spec.kind = NoiseSpec::Kind::product;
    const Json& ex = require(doc, "exponents", where);
    if (!ex.is_array()) throw ParseError(where + ".exponents: expected an array");
    for (std::size_t i = 0; i < ex.size(); ++i) {
      spec.exponents.push_back(rational_from_json(ex[i], where + ".exponents[" + std::to_string(i) + "]"));
    }
  } else {
    throw ParseError(where + ".kind: unknown noise kind '" + kind + "'");
  }
  spec.delta = rational_from_json(require(doc, "delta", where), where + ".delta");
  if (spec.delta < 0) throw ParseError(where + ".delta: must be non-negative");
  const long long seed = require_int(doc, "seed", where);
  spec.seed = static_cast<std::uint64_t>(seed);
  return spec;
}

}  // namespace

Rational rational_from_json(const Json& value, const std::string& where) {
  if (!value.is_string()) {
    throw ParseError(where + ": rational literals must be strings like \"p/q\", got " + value.dump());
  }
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json rational_to_json(const Rational& value) { return format_rational(value); }

Point<Rational> point_from_json(const Json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": a point is an array of rational strings");
  Point<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(rational_from_json(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json point_to_json(const Point<Rational>& point) {
  Json out = Json::array();
  for (const auto& v : point) out.push_back(format_rational(v));
  return out;
}

MappingModel model_from_json(const Json& doc) {
  const std::string where = "model";
  const long long n = require_int(doc, "n", where);
  const long long m = require_int(doc, "m", where);
  if (n < 1) throw ParseError("model.n: must be >= 1");
  if (m < 1) throw ParseError("model.m: must be >= 1");
  Mode mode = Mode::exact;
  if (doc.contains("mode")) {
    try {
      mode = parse_mode(doc["mode"].get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("model.mode: ") + e.what());
    }
  }
  unsigned max_degree = kDefaultMaxDegree;
  if (doc.contains("max_degree")) {
    const long long cap = require_int(doc, "max_degree", where);
    if (cap < 0) throw ParseError("model.max_degree: must be non-negative");
    max_degree = static_cast<unsigned>(cap);
  }
  const Json& terms = require(doc, "terms", where);
  if (!terms.is_array()) throw ParseError("model.terms: expected an array");
  std::vector<PolynomialTerm> parsed;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tw = "model.terms[" + std::to_string(t) + "]";
    const Json& degrees = require(terms[t], "degrees", tw);
    const Json& coeff = require(terms[t], "coeff", tw);
    if (!degrees.is_array()) throw ParseError(tw + ".degrees: expected an array");
    if (!coeff.is_array()) throw ParseError(tw + ".coeff: expected an array");
    if (degrees.size() != static_cast<std::size_t>(n)) {
      throw ParseError(tw + ".degrees: length " + std::to_string(degrees.size()) + " does not match n = " +
                       std::to_string(n));
    }
    if (coeff.size() != static_cast<std::size_t>(m)) {
      throw ParseError(tw + ".coeff: length " + std::to_string(coeff.size()) + " does not match m = " +
                       std::to_string(m));
    }
    PolynomialTerm term;
    for (std::size_t j = 0; j < degrees.size(); ++j) {
      if (!degrees[j].is_number_integer() || degrees[j].get<long long>() < 0) {
        throw ParseError(tw + ".degrees[" + std::to_string(j) + "]: expected a non-negative integer");
      }
      const long long d = degrees[j].get<long long>();
      if (d > static_cast<long long>(max_degree)) {
        throw ParseError(tw + ".degrees[" + std::to_string(j) + "]: degree " + std::to_string(d) +
                         " exceeds cap " + std::to_string(max_degree));
      }
      term.degrees.push_back(static_cast<unsigned>(d));
    }
    for (std::size_t c = 0; c < coeff.size(); ++c) {
      term.coeff.push_back(rational_from_json(coeff[c], tw + ".coeff[" + std::to_string(c) + "]"));
    }
    parsed.push_back(std::move(term));
  }
  MappingModel model{PolynomialModel(static_cast<std::size_t>(n), static_cast<std::size_t>(m), std::move(parsed),
                                     max_degree),
                     NoiseSpec{}, mode};
  if (doc.contains("noise")) model.noise = noise_from_json(doc["noise"], "model.noise");
  if (model.noise.kind == NoiseSpec::Kind::product && model.noise.exponents.size() != model.base.n()) {
    throw ParseError("model.noise.exponents: expected one exponent per variable");
  }
  return model;
}

Json model_to_json(const MappingModel& model) {
  Json doc;
  doc["n"] = model.base.n();
  doc["m"] = model.base.m();
  doc["mode"] = to_string(model.mode);
  if (model.base.max_degree() != kDefaultMaxDegree) doc["max_degree"] = model.base.max_degree();
  Json terms = Json::array();
  for (const auto& term : model.base.terms()) {
    Json t;
    t["degrees"] = term.degrees;
    Json c = Json::array();
    for (const auto& v : term.coeff) c.push_back(format_rational(v));
    t["coeff"] = std::move(c);
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  if (model.noise.kind != NoiseSpec::Kind::none) {
    Json noise;
    noise["kind"] = noise_kind_name(model.noise.kind);
    noise["delta"] = format_rational(model.noise.delta);
    if (model.noise.kind == NoiseSpec::Kind::power) {
      noise["alpha"] = format_rational(model.noise.alpha);
    } else {
      Json ex = Json::array();
      for (const auto& e : model.noise.exponents) ex.push_back(format_rational(e));
      noise["exponents"] = std::move(ex);
    }
    noise["seed"] = model.noise.seed;
    doc["noise"] = std::move(noise);
  }
  return doc;
}

MappingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return model_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_model(const MappingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw IoError("failed writing model file " + path.string());
}

}  // namespace multicubic
