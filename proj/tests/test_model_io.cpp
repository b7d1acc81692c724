#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "multicubic/errors.hpp"
#include "multicubic/grid.hpp"
#include "multicubic/model_io.hpp"
#include "test_util.hpp"

using namespace multicubic;
using multicubic::testing::data_path;
using multicubic::testing::q;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    model_from_json(Json::parse(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("1/3") == q(1, 3));
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(format_rational(q(-3, 2)) == "-3/2");
  CHECK(format_rational(q(4, 2)) == "2");
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/-2", "--1", "1/"}) {
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("model files round-trip") {
  MappingModel m{PolynomialModel(2, 2,
                                 {PolynomialTerm{{3, 3}, {q(1, 3), q(-2)}}, PolynomialTerm{{1, 0}, {q(0), q(5, 7)}}}),
                 NoiseSpec{NoiseSpec::Kind::power, q(1, 100), q(1), {}, 42}, Mode::floating};
  const Json doc = model_to_json(m);
  CHECK(model_from_json(doc) == m);
  CHECK(doc["terms"][0]["coeff"][0] == "1/3");

  const auto dir = std::filesystem::temp_directory_path() / "multicubic_model_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "m.json").string();
  save_model(m, path);
  CHECK(load_model(path) == m);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled data files load") {
  const auto cubic = load_model(data_path("cubic1.json"));
  CHECK(cubic.base.n() == 1);
  CHECK(cubic.mode == Mode::exact);
  const auto noisy = load_model(data_path("noisy.json"));
  CHECK(noisy.noise.kind == NoiseSpec::Kind::power);
  CHECK(noisy.mode == Mode::floating);
  CHECK_NOTHROW(load_model(data_path("cubic2.json")));
  CHECK_NOTHROW(load_model(data_path("not_cubic.json")));
  CHECK_NOTHROW(load_model(data_path("cubic_plus_linear.json")));
}

TEST_CASE("parse errors name the offending field") {
  CHECK(parse_error_of(R"({"n":2,"m":1,"terms":[{"degrees":[3],"coeff":["1"]}]})") ==
        "model.terms[0].degrees: length 1 does not match n = 2");
  CHECK(parse_error_of(R"({"n":1,"m":1,"terms":[{"degrees":[3],"coeff":[1]}]})").starts_with(
      "model.terms[0].coeff[0]: rational literals must be strings"));
  CHECK(parse_error_of(R"({"n":1,"m":1,"terms":[{"degrees":[9],"coeff":["1"]}]})") ==
        "model.terms[0].degrees[0]: degree 9 exceeds cap 8");
  CHECK(parse_error_of(R"({"m":1,"terms":[]})") == "model: missing field 'n'");
  CHECK(parse_error_of(R"({"n":1,"m":1,"mode":"fast","terms":[]})").starts_with("model.mode:"));
  CHECK(parse_error_of(R"({"n":1,"m":1,"terms":[],"noise":{"kind":"white","delta":"1","seed":1}})") ==
        "model.noise.kind: unknown noise kind 'white'");
  CHECK(parse_error_of(R"({"n":1,"m":1,"terms":[],"noise":{"kind":"power","alpha":"1","delta":"-1","seed":1}})") ==
        "model.noise.delta: must be non-negative");
  CHECK_NOTHROW(model_from_json(Json::parse(R"({"n":1,"m":1,"max_degree":9,"terms":[{"degrees":[9],"coeff":["1"]}]})")));
}

TEST_CASE("missing or malformed files raise IoError / ParseError") {
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), IoError);
  const auto path = (std::filesystem::temp_directory_path() / "multicubic_bad.json").string();
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_model(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("points as JSON") {
  const Point<Rational> p{q(1, 3), q(-2)};
  CHECK(point_from_json(point_to_json(p), "p") == p);
  CHECK_THROWS_AS(point_from_json(Json::parse("[1, 2]"), "p"), ParseError);
}

TEST_CASE("grid specs") {
  CHECK(parse_grid_spec("int:-3..3", 1).size() == 49);
  CHECK(parse_grid_spec("int:-1..1", 2).size() == 81);
  CHECK(parse_grid_spec("random:10:5", 3).size() == 10);
  CHECK(parse_grid_spec("int:0..1+random:4", 1).size() == 8);
  CHECK(parse_grid_spec("default", 1) == default_grid(1));
  CHECK(default_grid(1).size() == 49 + 200);
  CHECK(parse_grid_spec("random:10:5", 2) == parse_grid_spec("random:10:5", 2));
  CHECK(parse_grid_spec("random:10:5", 2) != parse_grid_spec("random:10:6", 2));
  for (const char* bad : {"", "int:3", "int:a..b", "random:-1", "hex:1", "int:1..0"}) {
    CHECK_THROWS(parse_grid_spec(bad, 1));
  }
}

TEST_CASE("random rational pairs are canonical and bounded") {
  for (const auto& s : random_rational_pairs(2, 1, 300, 9)) {
    for (const auto& v : s.x1) {
      Rational c = v;
      c.canonicalize();
      CHECK(c == v);
      CHECK(abs_value(v) <= 17);
    }
  }
}

TEST_CASE("grid_points keeps first appearance order, without duplicates") {
  const auto pts = grid_points(convert_samples<Rational>(integer_cross_grid(1, 1, -1, 1)));
  CHECK(pts.size() == 3);
  CHECK(pts.front() == Point<Rational>{q(-1)});
  CHECK(std::set<Point<Rational>>(pts.begin(), pts.end()).size() == pts.size());
}

TEST_CASE("linspace hits both ends exactly") {
  const auto v = linspace(q(-2), q(2), 5);
  CHECK(v == std::vector<Rational>{q(-2), q(-1), q(0), q(1), q(2)});
  CHECK(linspace(q(0), q(1), 1) == std::vector<Rational>{q(0)});
}
