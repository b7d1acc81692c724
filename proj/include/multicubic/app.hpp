#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "multicubic/model_io.hpp"

namespace multicubic {

/// One CLI invocation. Every run is reproducible from this record, which is
/// echoed into the report.
struct RunRequest {
  std::string command;  // identities|verify|classify|stabilize|bound|hyper|norm-cube
  std::optional<std::string> model;
  std::string grid = "default";
  std::optional<std::string> mode;
  std::size_t n_max = 12;
  std::size_t n = 1;
  std::optional<std::string> alpha;
  std::optional<std::string> delta;
  std::optional<int> beta;
  std::size_t iterations = 40;
  std::string points = "lin:-2..2:100";
  std::optional<std::string> exponents;  // "p11,..,p1n,p21,..,p2n"
  double tolerance = 1e-9;
  std::string format = "json";
  std::optional<std::string> output;
  bool timing = false;
};

Json request_to_json(const RunRequest& request);
/// Keys mirror the long flag names; unknown keys are rejected.
RunRequest request_from_json(const Json& doc);

struct RunResult {
  int exit_code = 0;  // 0 verdict success, 1 verdict failure
  std::string text;   // the rendered report
};

/// Throws ParseError/DomainError/UnsupportedExponentError/IoError on usage
/// problems; the caller maps those to exit code 2.
RunResult run(const RunRequest& request);

/// "lin:LO..HI:COUNT" (product grid over n variables) or explicit
/// "a,b;c,d" with one ';'-separated entry per point.
std::vector<Point<Rational>> parse_points(const std::string& spec, std::size_t n);

/// Full command-line entry point; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multicubic
