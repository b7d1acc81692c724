#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multicubic/errors.hpp"
#include "multicubic/stability.hpp"
#include "test_util.hpp"

using namespace multicubic;
using multicubic::testing::q;

namespace {

PolynomialModel cubic_plus_linear(const Rational& c, const Rational& eps) {
  return PolynomialModel(1, 1, {PolynomialTerm{{3}, {c}}, PolynomialTerm{{1}, {eps}}});
}

std::vector<Point<double>> line_points(std::size_t count) {
  std::vector<Point<double>> out;
  for (const auto& v : linspace(q(-2), q(2), count)) out.push_back({to_double(v)});
  return out;
}

}  // namespace

TEST_CASE("choose_beta picks the contracting direction") {
  CHECK(choose_beta(q(1), 1) == 1);
  CHECK(choose_beta(q(5), 1) == -1);
  CHECK(choose_beta(q(17, 3), 2) == 1);
  CHECK(choose_beta(q(7), 2) == -1);
  CHECK_THROWS_AS(choose_beta(q(3), 1), UnsupportedExponentError);
  CHECK_THROWS_AS(choose_beta(q(6), 2), UnsupportedExponentError);
}

TEST_CASE("T^l of a cubic-plus-linear map, by hand") {
  const auto f = cubic_plus_linear(q(2), q(3)).as_mapping<Rational>();
  const Point<Rational> x{q(5, 3)};
  for (std::size_t l = 0; l <= 6; ++l) {
    // 2^{-3l} (2 (2^l x)^3 + 3 (2^l x)) = 2 x^3 + 3 * 4^{-l} x
    const Rational expected = 2 * x[0] * x[0] * x[0] + 3 * pow2<Rational>(-2 * static_cast<long>(l)) * x[0];
    CHECK(apply_t_pow<Rational>(f, 1, l, x)[0] == expected);
    CHECK(t_pow_mapping(f, 1, l)(x)[0] == expected);
  }
  // beta = -1: 2^{3l} f(2^{-l} x) = 2 x^3 + 3 * 4^{l} x
  CHECK(apply_t_pow<Rational>(f, -1, 2, x)[0] == 2 * x[0] * x[0] * x[0] + 48 * x[0]);
}

TEST_CASE("multi-cubic maps are fixed by T and have zero contraction residual") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto f = make_multicubic_monomial(n, {q(-4, 9)}).as_mapping<Rational>();
    for (const auto& s : random_rational_pairs(n, 1, 10, 2)) {
      CHECK(apply_t_pow<Rational>(f, 1, 5, s.x1) == f(s.x1));
      CHECK(apply_t_pow<Rational>(f, -1, 5, s.x1) == f(s.x1));
      CHECK(contraction_residual<Rational>(f, s.x1) == Vec<Rational>{q(0)});
    }
  }
}

TEST_CASE("series bound against closed forms") {
  struct Case {
    std::size_t n;
    Rational alpha;
    Rational delta;
  };
  for (const Case& c : {Case{1, q(1), q(1)}, Case{2, q(2), q(1, 3)}, Case{1, q(2), q(7, 5)}, Case{3, q(4), q(2)}}) {
    const auto phi = ControlFunction::power(c.delta, c.alpha);
    const int beta = choose_beta(c.alpha, c.n);
    for (const auto& s : random_rational_pairs(c.n, 1, 10, 6)) {
      const auto series = phi_series<Rational>(phi, s.x1, c.n, beta, 60);
      REQUIRE_FALSE(series.diverged);
      const Rational closed = phi_closed_form<Rational>(s.x1, c.delta, c.alpha, c.n, BoundVariant::closed);
      // The power control sums to a geometric series, so partial + tail is exact.
      CHECK(series.value() == closed);
      CHECK(series.partial <= closed);
    }
  }
  // n = 1, alpha = 1: delta |x| / (2^4 - 2^2)
  const auto s = phi_series<Rational>(ControlFunction::power(q(1), q(1)), Point<Rational>{q(3)}, 1, 1, 60);
  CHECK(s.value() == q(1, 4));
}

TEST_CASE("above the critical exponent the series constant differs from the published one") {
  const auto phi = ControlFunction::power(q(1), q(5));
  for (const long v : {1L, -2L, 3L}) {
    const Point<Rational> x{q(v)};
    const Rational sum5 = abs_value(q(v)) * q(v) * q(v) * q(v) * q(v);
    const auto series = phi_series<Rational>(phi, x, 1, -1, 60);
    CHECK(series.value() == sum5 / 48);
    CHECK(phi_closed_form<Rational>(x, q(1), q(5), 1, BoundVariant::series) == sum5 / 48);
    CHECK(phi_closed_form<Rational>(x, q(1), q(5), 1, BoundVariant::closed) == 2 * sum5 / 3);
  }
  CHECK_THROWS_AS(phi_closed_form<Rational>(Point<Rational>{q(1)}, q(1), q(3), 1, BoundVariant::closed),
                  UnsupportedExponentError);
  CHECK_THROWS_AS(phi_closed_form<Rational>(Point<Rational>{q(1)}, q(1), q(0), 1, BoundVariant::closed), DomainError);
}

TEST_CASE("a wrongly oriented series diverges") {
  const auto phi = ControlFunction::power(q(1), q(1));
  CHECK(phi_series<Rational>(phi, Point<Rational>{q(1)}, 1, -1, 40).diverged);
  CHECK_FALSE(phi_series<Rational>(phi, Point<Rational>{q(0)}, 1, -1, 40).diverged);
}

TEST_CASE("fit_delta recovers 12 eps for a linear perturbation") {
  // D(eps x)(x1, x2) = -12 eps x1, so the sharpest alpha = 1 constant is 12 eps, attained at x2 = 0.
  const auto f = cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>();
  const auto fit = fit_delta(f, q(1), convert_samples<Rational>(default_grid(1)));
  CHECK_FALSE(fit.delta.infinite);
  CHECK(fit.delta.value == q(6, 5));
  REQUIRE(fit.worst.has_value());
  CHECK(fit.worst->x2 == Point<Rational>{q(0)});
  CHECK(fit.skipped == 1);  // the (0, 0) sample
}

TEST_CASE("hypothesis check") {
  const auto f = cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>();
  const auto grid = convert_samples<Rational>(default_grid(1));
  CHECK(check_hypothesis(f, ControlFunction::power(q(6, 5), q(1)), grid).holds);
  const auto h = check_hypothesis(f, ControlFunction::power(q(1), q(1)), grid);
  CHECK_FALSE(h.holds);
  REQUIRE(h.witness.has_value());
  CHECK(h.worst_ratio.value == q(6, 5));
}

TEST_CASE("decay of the difference operator along T^l") {
  const auto f = cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>();
  const auto grid = convert_samples<Rational>(integer_cross_grid(1, 1, -3, 3));
  const auto ok = dpow_decay_check(f, ControlFunction::power(q(6, 5), q(1)), 1, grid, 10);
  CHECK(ok.holds);
  CHECK(ok.hypothesis_held);
  CHECK(ok.checks == 11 * grid.size());
  const auto bad = dpow_decay_check(f, ControlFunction::power(q(1), q(1)), 1, grid, 10);
  CHECK_FALSE(bad.hypothesis_held);
}

TEST_CASE("hyperstability with a product control") {
  const auto grid = convert_samples<Rational>(default_grid(1));
  const auto phi = ControlFunction::product(q(1), {q(1), q(1)});
  const auto pert = hyperstability_check(cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>(), phi, grid);
  CHECK(pert.outcome == HyperOutcome::hypothesis_violated);
  REQUIRE(pert.hypothesis.witness.has_value());
  CHECK(pert.hypothesis.witness->x2 == Point<Rational>{q(0)});
  const auto exact = hyperstability_check(make_multicubic_monomial(1, {q(5)}).as_mapping<Rational>(), phi, grid);
  CHECK(exact.outcome == HyperOutcome::multicubic_on_grid);
  CHECK(to_string(exact.outcome) == "MultiCubicOnGrid");
  const auto f = make_multicubic_monomial(1, {q(5)}).as_mapping<Rational>();
  CHECK_THROWS_AS(hyperstability_check(f, ControlFunction::product(q(1), {q(1), q(2)}), grid), UnsupportedExponentError);
  CHECK_THROWS_AS(hyperstability_check(f, ControlFunction::power(q(1), q(1)), grid), DomainError);
  CHECK_THROWS_AS(hyperstability_check(f, ControlFunction::product(q(1), {q(0), q(2)}), grid), DomainError);
}

TEST_CASE("stabilize an exact multi-cubic map: C = f, zero error") {
  const auto f = make_multicubic_monomial(2, {q(3)}).as_mapping<Rational>();
  StabilizationConfig<Rational> cfg;
  cfg.iterations = 10;
  cfg.points = {{q(1), q(2)}, {q(-1, 2), q(3)}};
  cfg.grid = convert_samples<Rational>(integer_cross_grid(2, 1, -1, 1));
  const auto r = stabilize(f, ControlFunction::power(q(1), q(1)), cfg);
  CHECK(r.beta == 1);
  CHECK(r.bound_satisfied);
  CHECK(r.hypothesis.holds);
  for (const auto& row : r.rows) {
    CHECK(row.c == row.f);
    CHECK(row.error == 0);
  }
  REQUIRE(r.leading_coefficient.has_value());
  CHECK((*r.leading_coefficient)[0] == 3);
}

TEST_CASE("stabilize exact cubic-plus-linear: C is the cubic part up to 4^{-L}") {
  const auto f = cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>();
  StabilizationConfig<Rational> cfg;
  cfg.iterations = 30;
  cfg.points = {{q(1)}, {q(-2)}, {q(3, 2)}};
  cfg.grid = convert_samples<Rational>(default_grid(1));
  const auto r = stabilize(f, ControlFunction::power(q(6, 5), q(1)), cfg);
  CHECK(r.bound_satisfied);
  for (const auto& row : r.rows) {
    const Rational x = row.x[0];
    CHECK(row.c[0] == 5 * x * x * x + q(1, 10) * pow2<Rational>(-60) * x);
    // |f - C| = |x|/10 (1 - 4^{-L}) <= Phi = (6/5)|x|/12 = |x|/10
    CHECK(row.error <= row.phi_series);
    CHECK(row.bound_ok);
  }
}

TEST_CASE("stabilize a noisy float map") {
  const auto base = make_multicubic_monomial(1, {q(5)});
  const auto f = add_power_noise<double>(base.as_mapping<double>(), q(1, 2000), q(1), 7).as_mapping();
  StabilizationConfig<double> cfg;
  cfg.points = line_points(101);
  cfg.grid = convert_samples<double>(default_grid(1));
  const auto r = stabilize(f, ControlFunction::power(q(1, 100), q(1)), cfg);
  CHECK(r.bound_satisfied);
  CHECK(r.converged);
  CHECK(r.hypothesis.holds);
  for (const auto& row : r.rows) CHECK(std::abs(row.c[0] - 5 * std::pow(row.x[0], 3)) <= 1e-9);
}

TEST_CASE("stabilize refuses a divergent direction") {
  const auto f = make_multicubic_monomial(1, {q(5)}).as_mapping<double>();
  StabilizationConfig<double> cfg;
  cfg.beta = -1;
  cfg.points = {{1.0}};
  cfg.grid = convert_samples<double>(default_grid(1));
  CHECK_THROWS_AS(stabilize(f, ControlFunction::power(q(1, 100), q(1)), cfg), DivergenceError);
}

TEST_CASE("a product control takes the hyperstability pathway") {
  const auto f = make_multicubic_monomial(1, {q(5)}).as_mapping<Rational>();
  StabilizationConfig<Rational> cfg;
  cfg.points = {{q(1)}};
  cfg.grid = convert_samples<Rational>(default_grid(1));
  const auto r = stabilize(f, ControlFunction::product(q(1), {q(1), q(1)}), cfg);
  CHECK(r.hyperstability_pathway);
  REQUIRE(r.hyper.has_value());
  CHECK(r.hyper->outcome == HyperOutcome::multicubic_on_grid);
}

TEST_CASE("uniqueness: same core, different seeds") {
  const auto base = make_multicubic_monomial(1, {q(5)}).as_mapping<double>();
  const auto f1 = add_power_noise<double>(base, q(1, 2000), q(1), 1).as_mapping();
  const auto f2 = add_power_noise<double>(base, q(1, 2000), q(1), 2).as_mapping();
  StabilizationConfig<double> cfg;
  cfg.points = line_points(41);
  cfg.grid = convert_samples<double>(default_grid(1));
  const auto phi = ControlFunction::power(q(1, 100), q(1));
  CHECK(uniqueness_check(f1, f2, phi, cfg).max_disagreement <= 1e-9);
  const auto g = make_multicubic_monomial(1, {q(6)}).as_mapping<double>();
  CHECK(uniqueness_check(f1, g, phi, cfg).max_disagreement > 1);
}

TEST_CASE("the generic operator iteration reproduces T^L and the majorant sum") {
  const auto f = cubic_plus_linear(q(5), q(1, 10)).as_mapping<Rational>();
  const auto op = rescaling_operator<Rational>(1, 1);
  // theta bounds |T f - f| = (3/40)|x|; Lambda theta(x) = theta(2x)/8 = theta(x)/4.
  const std::function<Rational(std::span<const Rational>)> theta = [](std::span<const Rational> x) -> Rational {
    return q(3, 40) * abs_value(x[0]);
  };
  const Point<Rational> x{q(2)};
  const auto r = iterate_operator<Rational>(op, f, theta, x, 12);
  REQUIRE(r.estimate.has_value());
  CHECK((*r.estimate)[0] == apply_t_pow<Rational>(f, 1, 12, x)[0]);
  CHECK(r.theta_terms.size() == 13);
  CHECK(r.theta_terms[1] == r.theta_terms[0] / 4);
  CHECK_FALSE(r.diverged);
  CHECK(abs_value(f(x)[0] - (*r.estimate)[0]) <= r.theta_star);
}
