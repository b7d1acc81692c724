#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "multicubic/equation.hpp"
#include "multicubic/errors.hpp"
#include "test_util.hpp"

using namespace multicubic;
using multicubic::testing::q;

namespace {

// Direct transcription of the equation: all 2^n sign vectors on the left; all
// 3^n node choices on the right, each weighted by 2^{n-k} 12^k where k is the
// number of plain x1 entries.
Vec<Rational> oracle_diff(const Mapping<Rational>& f, const EquationSample<Rational>& s) {
  const std::size_t n = s.x1.size();
  Vec<Rational> out(f.shape().codim, Rational(0));
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point<Rational> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = 2 * s.x1[j] + (((mask >> j) & 1) ? -1 : 1) * s.x2[j];
    const auto v = f(p);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += v[c];
  }
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Point<Rational> p(n);
    std::size_t c = code;
    long k = 0;
    for (std::size_t j = 0; j < n; ++j, c /= 3) {
      switch (c % 3) {
        case 0:
          p[j] = s.x1[j];
          ++k;
          break;
        case 1:
          p[j] = s.x1[j] + s.x2[j];
          break;
        default:
          p[j] = s.x1[j] - s.x2[j];
      }
    }
    Rational w = 1;
    for (long i = 0; i < static_cast<long>(n) - k; ++i) w *= 2;
    for (long i = 0; i < k; ++i) w *= 12;
    const auto v = f(p);
    for (std::size_t cc = 0; cc < out.size(); ++cc) out[cc] -= w * v[cc];
  }
  return out;
}

PolynomialModel random_polynomial(std::size_t n, std::mt19937_64& rng, unsigned max_deg) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<PolynomialTerm> terms;
  for (int t = 0; t < 3; ++t) {
    PolynomialTerm term;
    for (std::size_t j = 0; j < n; ++j) term.degrees.push_back(deg(rng));
    term.coeff.push_back(q(num(rng), den(rng)));
    terms.push_back(term);
  }
  return PolynomialModel(n, 1, terms);
}

}  // namespace

TEST_CASE("plan sizes: 2^n sign patterns, 3^n right-hand terms") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto& plan = plan_for(n);
    CHECK(plan.sign_patterns().size() == (std::size_t{1} << n));
    std::size_t terms = 0;
    for (const auto& g : plan.groups()) terms += g.terms.size();
    CHECK(terms == static_cast<std::size_t>(std::pow(3, n)));
    CHECK(&plan == &plan_for(n));
  }
}

TEST_CASE("difference operator agrees with a direct transcription on random polynomials") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_polynomial(n, rng, 4).as_mapping<Rational>();
      for (const auto& s : convert_samples<Rational>(random_rational_pairs(n, 1, 15, 77 + trial))) {
        CHECK(diff_operator(f, s) == oracle_diff(f, s));
      }
    }
  }
}

TEST_CASE("multi-cubic monomials solve the equation exactly") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto f = make_multicubic_monomial(n, {q(-7, 3), q(2)}).as_mapping<Rational>();
    const auto report = scan_residuals(f, convert_samples<Rational>(random_rational_pairs(n, 1, 60, n)));
    CHECK(report.satisfied);
    CHECK(report.max_residual == 0);
    CHECK(report.first_failure == npos);
  }
}

TEST_CASE("hand values: x^2 and x") {
  const auto sq = PolynomialModel(1, 1, {PolynomialTerm{{2}, {q(1)}}}).as_mapping<Rational>();
  CHECK(diff_operator(sq, EquationSample<Rational>{{q(1)}, {q(1)}}) == Vec<Rational>{q(-10)});
  const auto lin = PolynomialModel(1, 1, {PolynomialTerm{{1}, {q(1)}}}).as_mapping<Rational>();
  const Point<Rational> one{q(1)};
  for (long y : {-2, 0, 1, 5}) {
    CHECK(junkim_residual<Rational>(lin, 0, one, Point<Rational>{q(y)}) == Vec<Rational>{q(-12)});
  }
}

TEST_CASE("with x2 = 0 the operator collapses to 2^n f(2x) - 2^{4n} f(x)") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto f = random_polynomial(n, rng, 5).as_mapping<Rational>();
    for (const auto& s : convert_samples<Rational>(random_rational_pairs(n, 1, 10, 9))) {
      Point<Rational> twice = s.x1;
      for (auto& v : twice) v *= 2;
      const Rational expected = pow2<Rational>(n) * f(twice)[0] - pow2<Rational>(4 * n) * f(s.x1)[0];
      CHECK(diff_operator(f, EquationSample<Rational>{s.x1, Point<Rational>(n, q(0))})[0] == expected);
    }
  }
}

TEST_CASE("separable maps: both sides factorize over variables") {
  // For f(x, y) = g(x) h(y) each side of the equation is a product of one-variable sides.
  const auto g = PolynomialModel(1, 1, {PolynomialTerm{{2}, {q(3)}}, PolynomialTerm{{3}, {q(1)}}});
  const auto h = PolynomialModel(1, 1, {PolynomialTerm{{1}, {q(-1)}}, PolynomialTerm{{4}, {q(1, 2)}}});
  std::vector<PolynomialTerm> prod;
  for (const auto& a : g.terms()) {
    for (const auto& b : h.terms()) prod.push_back(PolynomialTerm{{a.degrees[0], b.degrees[0]}, {a.coeff[0] * b.coeff[0]}});
  }
  const auto f = PolynomialModel(2, 1, prod).as_mapping<Rational>();
  for (const auto& s : convert_samples<Rational>(random_rational_pairs(2, 1, 20, 3))) {
    const EquationSample<Rational> sg{{s.x1[0]}, {s.x2[0]}};
    const EquationSample<Rational> sh{{s.x1[1]}, {s.x2[1]}};
    const auto gm = g.as_mapping<Rational>();
    const auto hm = h.as_mapping<Rational>();
    const Rational lhs = lhs_sum(gm, sg)[0] * lhs_sum(hm, sh)[0];
    const Rational rhs = rhs_sum(gm, sg)[0] * rhs_sum(hm, sh)[0];
    CHECK(lhs_sum(f, s)[0] == lhs);
    CHECK(rhs_sum(f, s)[0] == rhs);
    CHECK(diff_operator(f, s)[0] == lhs - rhs);
  }
}

TEST_CASE("float evaluation tracks exact evaluation") {
  std::mt19937_64 rng(8);
  const auto model = random_polynomial(2, rng, 3);
  const auto fq = model.as_mapping<Rational>();
  const auto fd = model.as_mapping<double>();
  for (const auto& s : random_rational_pairs(2, 1, 30, 4)) {
    const auto exact = evaluate_diff(fq, s);
    const auto approx = evaluate_diff(fd, EquationSample<double>{convert_vec<double>(s.x1), convert_vec<double>(s.x2)});
    CHECK(std::abs(approx.residual[0] - to_double(exact.residual[0])) <= 1e-12 * approx.scale + 1e-12);
  }
}

TEST_CASE("residual scan reports the first maximizer and the first failure") {
  const auto f = PolynomialModel(1, 1, {PolynomialTerm{{2}, {q(1)}}}).as_mapping<Rational>();
  std::vector<EquationSample<Rational>> grid{{{q(0)}, {q(0)}}, {{q(1)}, {q(1)}}, {{q(-1)}, {q(-1)}}, {{q(0)}, {q(1)}}};
  ScanOptions opts;
  opts.keep_per_sample = true;
  const auto r = scan_residuals(f, grid, opts);
  CHECK_FALSE(r.satisfied);
  CHECK(r.first_failure == 1);
  CHECK(r.worst_index == 1);  // (1,1) and (-1,-1) tie at 10
  CHECK(r.max_residual == 10);
  CHECK(r.per_sample.size() == 4);
  CHECK_THROWS_AS(scan_residuals(f, std::vector<EquationSample<Rational>>{{{q(0), q(1)}, {q(1)}}}), DomainError);
}

TEST_CASE("power condition") {
  const auto cubic = make_multicubic_monomial(2, {q(1)}).as_mapping<Rational>();
  const auto pts = grid_points(convert_samples<Rational>(integer_cross_grid(2, 1, -2, 2)));
  CHECK(check_power_condition(cubic, 0, 3, pts).holds);
  CHECK(check_power_condition(cubic, 1, 3, pts).holds);
  CHECK_FALSE(check_power_condition(cubic, 1, 2, pts).holds);
  CHECK_THROWS_AS(check_power_condition(cubic, 2, 3, pts), DomainError);
}

TEST_CASE("classification") {
  const auto grid = convert_samples<Rational>(default_grid(2));
  const auto cubic = make_multicubic_monomial(2, {q(3, 4)}).as_mapping<Rational>();
  const auto c = classify(cubic, grid);
  CHECK(c.verdict == Verdict::multicubic_on_grid);
  CHECK(c.junkim_checked > 0);
  CHECK(c.points_checked > 0);

  const auto bad = PolynomialModel(2, 1, {PolynomialTerm{{3, 2}, {q(1)}}}).as_mapping<Rational>();
  const auto cb = classify(bad, grid);
  CHECK(cb.verdict == Verdict::equation_fails);
  REQUIRE(cb.sample.has_value());
  CHECK(diff_operator(bad, *cb.sample) == cb.residual);
  CHECK(to_string(cb.verdict) == "EquationFails");
  CHECK_THROWS_AS(classify(cubic, std::vector<EquationSample<Rational>>{}), DomainError);
}

TEST_CASE("norm-cube map: homogeneous of degree 3 but not cubic") {
  const auto demo = norm_cube_demo(Exec::serial);
  CHECK(demo.demonstrated);
  CHECK(demo.doubling.holds);
  CHECK(demo.doubling.worst_relative < 1e-12);
  CHECK(demo.h_at_34 == Vec<double>{125, 0});
  CHECK(demo.h_at_68 == Vec<double>{1000, 0});
  CHECK(demo.residual_y10[0] == doctest::Approx(-2).epsilon(1e-12));
  CHECK(std::abs(demo.residual_y10[1]) <= 1e-12);
  CHECK(demo.residual_y00 == Vec<double>{0, 0});
  CHECK(demo.classification.verdict != Verdict::multicubic_on_grid);
}
