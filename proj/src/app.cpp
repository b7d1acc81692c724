#include "multicubic/app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "multicubic/errors.hpp"
#include "multicubic/report.hpp"

namespace multicubic {

namespace {

constexpr const char* kCommands[] = {"identities", "verify", "classify", "stabilize", "bound", "hyper", "norm-cube"};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) out.push_back(current);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

Mode resolve_mode(const RunRequest& req, const std::optional<MappingModel>& model) {
  if (req.mode) return parse_mode(*req.mode);
  if (model) return model->mode;
  if (const char* env = std::getenv("MULTICUBIC_MODE"); env != nullptr && *env != '\0') return parse_mode(env);
  return Mode::exact;
}

std::optional<MappingModel> load_request_model(const RunRequest& req, bool required) {
  if (!req.model) {
    if (required) throw ParseError("command '" + req.command + "' needs --model");
    return std::nullopt;
  }
  return load_model(*req.model);
}

template <class Body>
auto with_mode(Mode mode, Body&& body) {
  if (mode == Mode::exact) return body(std::type_identity<Rational>{});
  return body(std::type_identity<double>{});
}

Rational require_rational(const std::optional<std::string>& value, const char* flag) {
  if (!value) throw ParseError(std::string("missing --") + flag);
  return parse_rational(*value);
}

template <Scalar S>
std::vector<Point<S>> convert_points(const std::vector<Point<Rational>>& points) {
  std::vector<Point<S>> out;
  for (const auto& p : points) out.push_back(convert_vec<S>(p));
  return out;
}

struct Payload {
  Json result;
  int exit_code = 0;
  std::optional<std::string> csv;
};

Payload run_identities(const RunRequest& req) {
  if (req.n_max < 1) throw ParseError("--n-max must be at least 1");
  Payload p;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,total,total_expected,w2,w2_expected,w1,w1_expected,equal\n";
  bool all_equal = true;
  for (std::size_t n = 1; n <= req.n_max; ++n) {
    Json row = identity_json(n);
    const bool eq = row["total"]["equal"].get<bool>() && row["w2"]["equal"].get<bool>() &&
                    row["w1"]["equal"].get<bool>();
    all_equal = all_equal && eq;
    csv << n << ',' << row["total"]["computed"].get<std::string>() << ','
        << row["total"]["expected"].get<std::string>() << ',' << row["w2"]["computed"].get<std::string>() << ','
        << row["w2"]["expected"].get<std::string>() << ',' << row["w1"]["computed"].get<std::string>() << ','
        << row["w1"]["expected"].get<std::string>() << ',' << (eq ? "true" : "false") << '\n';
    rows.push_back(std::move(row));
  }
  p.result["verdict"] = all_equal ? "AllEqual" : "Mismatch";
  p.result["rows"] = std::move(rows);
  p.exit_code = all_equal ? 0 : 1;
  p.csv = csv.str();
  return p;
}

Payload run_verify(const RunRequest& req, const MappingModel& model, Mode mode) {
  const SampleGrid grid = parse_grid_spec(req.grid, model.base.n());
  return with_mode(mode, [&]<class S>(std::type_identity<S>) {
    const Mapping<S> f = realize<S>(model);
    ScanOptions options;
    options.tol.equation = req.tolerance;
    const auto report = scan_residuals(f, convert_samples<S>(grid), options);
    return Payload{residual_report_json(report), report.satisfied ? 0 : 1, std::nullopt};
  });
}

Payload run_classify(const RunRequest& req, const MappingModel& model, Mode mode) {
  const SampleGrid grid = parse_grid_spec(req.grid, model.base.n());
  return with_mode(mode, [&]<class S>(std::type_identity<S>) {
    Tolerances tol;
    tol.equation = req.tolerance;
    tol.junkim = req.tolerance;
    const auto c = classify(realize<S>(model), convert_samples<S>(grid), tol);
    return Payload{classification_json(c), c.verdict == Verdict::multicubic_on_grid ? 0 : 1, std::nullopt};
  });
}

ControlFunction control_from_request(const RunRequest& req) {
  const Rational delta = require_rational(req.delta, "delta");
  if (req.exponents) return ControlFunction::product(delta, parse_rational_list(*req.exponents));
  return ControlFunction::power(delta, require_rational(req.alpha, "alpha"));
}

Payload run_stabilize(const RunRequest& req, const MappingModel& model, Mode mode) {
  const std::size_t n = model.base.n();
  const SampleGrid grid = parse_grid_spec(req.grid, n);
  const auto points = parse_points(req.points, n);
  const ControlFunction phi = control_from_request(req);
  return with_mode(mode, [&]<class S>(std::type_identity<S>) {
    StabilizationConfig<S> cfg;
    cfg.beta = req.beta;
    cfg.iterations = req.iterations;
    cfg.tolerance = req.tolerance;
    cfg.points = convert_points<S>(points);
    cfg.grid = convert_samples<S>(grid);
    try {
      const auto report = stabilize(realize<S>(model), phi, cfg);
      const bool ok = report.bound_satisfied && report.converged;
      return Payload{stabilization_json(report), ok ? 0 : 1, stabilization_csv(report)};
    } catch (const DivergenceError& e) {
      Json result;
      result["verdict"] = "Diverged";
      result["error"] = e.what();
      return Payload{result, 1, std::nullopt};
    }
  });
}

Payload run_bound(const RunRequest& req, Mode mode) {
  const std::size_t n = req.n;
  if (n < 1) throw ParseError("--n must be at least 1");
  const Rational delta = require_rational(req.delta, "delta");
  const Rational alpha = require_rational(req.alpha, "alpha");
  const int beta = req.beta.value_or(choose_beta(alpha, n));
  const auto points = parse_points(req.points, n);
  const ControlFunction phi = ControlFunction::power(delta, alpha);
  return with_mode(mode, [&]<class S>(std::type_identity<S>) {
    Payload p;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "x,phi_series_partial,phi_series,phi_closed,phi_series_exact\n";
    bool diverged = false;
    for (const auto& x0 : points) {
      const Point<S> x = convert_vec<S>(x0);
      const auto series = phi_series<S>(phi, x, n, beta, req.iterations);
      Json row;
      row["x"] = vec_json(x);
      row["phi_series_partial"] = format_scalar(series.partial);
      row["phi_series"] = series.diverged ? Json("diverged") : Json(format_scalar(series.value()));
      std::string closed;
      std::string exact_sum;
      if (alpha > 0) {
        closed = format_scalar(phi_closed_form<S>(x, delta, alpha, n, BoundVariant::closed));
        exact_sum = format_scalar(phi_closed_form<S>(x, delta, alpha, n, BoundVariant::series));
      }
      row["phi_closed"] = closed.empty() ? Json(nullptr) : Json(closed);
      row["phi_series_exact"] = exact_sum.empty() ? Json(nullptr) : Json(exact_sum);
      diverged = diverged || series.diverged;
      std::string xs;
      for (std::size_t i = 0; i < x.size(); ++i) xs += (i ? ";" : "") + format_scalar(x[i]);
      csv << xs << ',' << format_scalar(series.partial) << ','
          << (series.diverged ? std::string("diverged") : format_scalar(series.value())) << ',' << closed << ','
          << exact_sum << '\n';
      rows.push_back(std::move(row));
    }
    p.result["verdict"] = diverged ? "Diverged" : "Converged";
    p.result["beta"] = beta;
    p.result["rows"] = std::move(rows);
    p.exit_code = diverged ? 1 : 0;
    p.csv = csv.str();
    return p;
  });
}

Payload run_hyper(const RunRequest& req, const MappingModel& model, Mode mode) {
  if (!req.exponents) throw ParseError("command 'hyper' needs --p");
  const ControlFunction phi =
      ControlFunction::product(require_rational(req.delta, "delta"), parse_rational_list(*req.exponents));
  const SampleGrid grid = parse_grid_spec(req.grid, model.base.n());
  return with_mode(mode, [&]<class S>(std::type_identity<S>) {
    Tolerances tol;
    tol.equation = req.tolerance;
    const auto h = hyperstability_check(realize<S>(model), phi, convert_samples<S>(grid), tol);
    return Payload{hyperstability_json(h), h.outcome == HyperOutcome::multicubic_on_grid ? 0 : 1, std::nullopt};
  });
}

Payload run_norm_cube() {
  const NormCubeDemo demo = norm_cube_demo();
  return Payload{norm_cube_json(demo), demo.demonstrated ? 0 : 1, std::nullopt};
}

}  // namespace

std::vector<Point<Rational>> parse_points(const std::string& spec, std::size_t n) {
  if (n == 0) throw ParseError("points need n >= 1");
  std::vector<Point<Rational>> out;
  if (spec.starts_with("lin:")) {
    const std::string body = spec.substr(4);
    const auto dots = body.find("..");
    const auto colon = body.rfind(':');
    if (dots == std::string::npos || colon == std::string::npos || colon < dots) {
      throw ParseError("points spec '" + spec + "': expected lin:LO..HI:COUNT");
    }
    const Rational lo = parse_rational(body.substr(0, dots));
    const Rational hi = parse_rational(body.substr(dots + 2, colon - dots - 2));
    std::size_t count = 0;
    try {
      count = std::stoul(body.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("points spec '" + spec + "': bad count");
    }
    const std::vector<Rational> axis = linspace(lo, hi, count);
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (total > 1000000 / std::max<std::size_t>(count, 1)) throw ParseError("points spec produces too many points");
      total *= count;
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      Point<Rational> p(n);
      std::size_t rest = idx;
      for (std::size_t j = n; j-- > 0;) {
        p[j] = axis[rest % count];
        rest /= count;
      }
      out.push_back(std::move(p));
    }
    return out;
  }
  for (const auto& entry : split(spec, ';')) {
    Point<Rational> p = parse_rational_list(entry);
    if (p.size() != n) {
      throw ParseError("point '" + entry + "' has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(n));
    }
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ParseError("no evaluation points given");
  return out;
}

Json request_to_json(const RunRequest& r) {
  Json out;
  out["command"] = r.command;
  if (r.model) out["model"] = *r.model;
  out["grid"] = r.grid;
  if (r.mode) out["mode"] = *r.mode;
  out["n-max"] = r.n_max;
  out["n"] = r.n;
  if (r.alpha) out["alpha"] = *r.alpha;
  if (r.delta) out["delta"] = *r.delta;
  if (r.beta) out["beta"] = *r.beta;
  out["L"] = r.iterations;
  out["points"] = r.points;
  if (r.exponents) out["p"] = *r.exponents;
  out["tolerance"] = format_double(r.tolerance);
  out["format"] = r.format;
  if (r.output) out["output"] = *r.output;
  return out;
}

RunRequest request_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("request: expected a JSON object");
  RunRequest r;
  auto str = [&](const std::string& key) {
    const Json& v = doc.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError("request." + key + ": expected a string");
  };
  auto count = [&](const std::string& key) {
    const Json& v = doc.at(key);
    if (!v.is_number_unsigned()) throw ParseError("request." + key + ": expected a non-negative integer");
    return v.get<std::size_t>();
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      r.command = str(key);
    } else if (key == "model") {
      r.model = str(key);
    } else if (key == "grid") {
      r.grid = str(key);
    } else if (key == "mode") {
      r.mode = str(key);
    } else if (key == "n-max") {
      r.n_max = count(key);
    } else if (key == "n") {
      r.n = count(key);
    } else if (key == "alpha") {
      r.alpha = str(key);
    } else if (key == "delta") {
      r.delta = str(key);
    } else if (key == "beta") {
      if (!value.is_number_integer()) throw ParseError("request.beta: expected +1 or -1");
      r.beta = value.get<int>();
    } else if (key == "L") {
      r.iterations = count(key);
    } else if (key == "points") {
      if (value.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < value.size(); ++i) {
          const Point<Rational> p = point_from_json(value[i], "request.points[" + std::to_string(i) + "]");
          if (i != 0) joined += ';';
          for (std::size_t j = 0; j < p.size(); ++j) joined += (j ? "," : "") + format_rational(p[j]);
        }
        r.points = joined;
      } else {
        r.points = str(key);
      }
    } else if (key == "p") {
      r.exponents = str(key);
    } else if (key == "tolerance") {
      if (value.is_number()) {
        r.tolerance = value.get<double>();
      } else {
        r.tolerance = std::stod(str(key));
      }
    } else if (key == "format") {
      r.format = str(key);
    } else if (key == "output") {
      r.output = str(key);
    } else {
      throw ParseError("request: unknown field '" + key + "'");
    }
  }
  return r;
}

RunResult run(const RunRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  bool known = false;
  for (const char* c : kCommands) known = known || request.command == c;
  if (!known) throw ParseError("unknown command '" + request.command + "'");
  const OutputFormat format = parse_format(request.format);
  if (request.beta && *request.beta != 1 && *request.beta != -1) throw ParseError("--beta must be +1 or -1");
  if (!(request.tolerance > 0)) throw ParseError("--tolerance must be positive");

  const bool needs_model = request.command == "verify" || request.command == "classify" ||
                           request.command == "stabilize" || request.command == "hyper";
  const std::optional<MappingModel> model = load_request_model(request, needs_model);
  Mode mode = resolve_mode(request, model);
  if (request.command == "norm-cube") mode = Mode::floating;

  Payload payload;
  if (request.command == "identities") {
    payload = run_identities(request);
  } else if (request.command == "verify") {
    payload = run_verify(request, *model, mode);
  } else if (request.command == "classify") {
    payload = run_classify(request, *model, mode);
  } else if (request.command == "stabilize") {
    payload = run_stabilize(request, *model, mode);
  } else if (request.command == "bound") {
    payload = run_bound(request, mode);
  } else if (request.command == "hyper") {
    payload = run_hyper(request, *model, mode);
  } else {
    payload = run_norm_cube();
  }

  RunResult result;
  result.exit_code = payload.exit_code;
  if (format == OutputFormat::csv) {
    if (!payload.csv) throw ParseError("csv output is not available for command '" + request.command + "'");
    result.text = *payload.csv;
    return result;
  }
  Json report;
  report["tool"] = "multicubic";
  report["version"] = MULTICUBIC_VERSION;
  report["command"] = request.command;
  report["mode"] = to_string(mode);
  report["request"] = request_to_json(request);
  report["result"] = std::move(payload.result);
  report["exitCode"] = payload.exit_code;
  if (request.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["durationMs"] = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  result.text = report.dump(2) + "\n";
  return result;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-cubic functional equation toolkit: identities, verification, stabilization, bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MULTICUBIC_VERSION));

  RunRequest cli;
  std::string request_path;
  std::string alpha;
  std::string delta;
  std::string exponents;
  std::string model;
  std::string mode;
  std::string output;
  int beta = 0;

  std::vector<CLI::App*> subs;
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--request", request_path, "JSON request file; explicit flags override its fields");
    sub->add_option("--mode", mode, "exact|float (default: model file, then $MULTICUBIC_MODE, then exact)");
    sub->add_option("--format", cli.format, "json|csv");
    sub->add_option("--output,-o", output, "write the report here instead of stdout");
    sub->add_flag("--timing", cli.timing, "include wall-clock duration (breaks byte-determinism)");
    subs.push_back(sub);
  }
  auto find = [&](const std::string& name) { return app.get_subcommand(name); };
  find("identities")->description("Check the three binomial weight identities exactly for n = 1..n-max");
  find("identities")->add_option("--n-max", cli.n_max, "largest arity");
  for (const char* name : {"verify", "classify", "stabilize", "hyper"}) {
    find(name)->add_option("--model", model, "model file (JSON)");
    find(name)->add_option("--grid", cli.grid, "default | int:LO..HI | random:COUNT[:SEED], joined with '+'");
    find(name)->add_option("--tolerance", cli.tolerance, "float-mode tolerance");
  }
  find("verify")->description("Evaluate the difference operator over a grid");
  find("classify")->description("Grid-level multi-cubic classification");
  find("stabilize")->description("Recover the multi-cubic approximant and certify the error bound");
  find("bound")->description("Series and closed-form error bounds for a power control");
  find("hyper")->description("Hyperstability check for a product control");
  find("norm-cube")->description("Norm-cube mapping: doubling holds, the cubic equation fails");
  for (const char* name : {"stabilize", "bound"}) {
    find(name)->add_option("--alpha", alpha, "power-control exponent (rational)");
    find(name)->add_option("--beta", beta, "override the contraction sign (+1 or -1)");
    find(name)->add_option("--L", cli.iterations, "iterations / series truncation");
    find(name)->add_option("--points", cli.points, "lin:LO..HI:COUNT or 'a,b;c,d'");
  }
  for (const char* name : {"stabilize", "bound", "hyper"}) {
    find(name)->add_option("--delta", delta, "control scale (rational)");
  }
  find("bound")->add_option("--n", cli.n, "arity");
  for (const char* name : {"stabilize", "hyper"}) {
    find(name)->add_option("--p", exponents, "product-control exponents p11,..,p1n,p21,..,p2n");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  auto given = [&](const std::string& flag) {
    const CLI::Option* opt = chosen->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  try {
    RunRequest req;
    if (given("--request")) {
      std::ifstream in(request_path);
      if (!in) throw IoError("cannot open request file " + request_path);
      Json doc;
      try {
        doc = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw ParseError(request_path + ": " + e.what());
      }
      req = request_from_json(doc);
      if (!req.command.empty() && req.command != chosen->get_name()) {
        throw ParseError("request file is for command '" + req.command + "', not '" + chosen->get_name() + "'");
      }
    }
    req.command = chosen->get_name();
    if (given("--mode")) req.mode = mode;
    if (given("--format")) req.format = cli.format;
    if (given("--output")) req.output = output;
    if (given("--timing")) req.timing = cli.timing;
    if (given("--n-max")) req.n_max = cli.n_max;
    if (given("--model")) req.model = model;
    if (given("--grid")) req.grid = cli.grid;
    if (given("--tolerance")) req.tolerance = cli.tolerance;
    if (given("--alpha")) req.alpha = alpha;
    if (given("--beta")) req.beta = beta;
    if (given("--L")) req.iterations = cli.iterations;
    if (given("--points")) req.points = cli.points;
    if (given("--delta")) req.delta = delta;
    if (given("--n")) req.n = cli.n;
    if (given("--p")) req.exponents = exponents;

    const RunResult result = run(req);
    emit_text(result.text, req.output, out);
    return result.exit_code;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const UnsupportedExponentError& e) {
    err << "unsupported exponent: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace multicubic
