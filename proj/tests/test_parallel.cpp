#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <random>
#include <stdexcept>

#include "multicubic/equation.hpp"
#include "multicubic/parallel.hpp"
#include "multicubic/stability.hpp"
#include "test_util.hpp"

using namespace multicubic;
using multicubic::testing::q;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("argmax: parallel matches serial, ties go to the lowest index") {
  Threads t(4);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> small(0, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> v(1 + trial * 37);
    for (auto& x : v) x = small(rng);
    auto key = [&](std::size_t i) -> std::optional<int> {
      if (v[i] % 7 == 3) return std::nullopt;
      return v[i];
    };
    const auto a = argmax_serial<int>(v.size(), key);
    const auto b = argmax_parallel<int>(v.size(), key);
    CHECK(a.index == b.index);
    CHECK(a.value == b.value);
    if (a.found()) {
      for (std::size_t i = 0; i < a.index; ++i) {
        if (key(i)) CHECK(*key(i) < a.value);
      }
    }
  }
  CHECK_FALSE(argmax_parallel<int>(0, [](std::size_t) -> std::optional<int> { return 1; }).found());
}

TEST_CASE("kernels rethrow the exception of the lowest failing index") {
  Threads t(4);
  auto boom = [](std::size_t i) -> std::optional<int> {
    if (i == 17 || i == 900) throw std::runtime_error("at " + std::to_string(i));
    return static_cast<int>(i);
  };
  for (Exec e : {Exec::serial, Exec::parallel}) {
    try {
      argmax<int>(e, 1000, boom);
      FAIL("expected a throw");
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()) == "at 17");
    }
    try {
      map_indices<int>(e, 1000, [&](std::size_t i) { return *boom(i); });
      FAIL("expected a throw");
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()) == "at 17");
    }
  }
}

TEST_CASE("map_indices keeps index order") {
  Threads t(3);
  const auto out = map_indices<std::size_t>(Exec::parallel, 500, [](std::size_t i) { return i * i; });
  REQUIRE(out.size() == 500);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
}

TEST_CASE("residual scans and classification agree between serial and parallel") {
  Threads t(4);
  const auto grid = convert_samples<Rational>(default_grid(2));
  const auto bad = PolynomialModel(2, 1, {PolynomialTerm{{3, 2}, {q(1)}}, PolynomialTerm{{1, 1}, {q(2, 3)}}})
                       .as_mapping<Rational>();
  ScanOptions s;
  s.exec = Exec::serial;
  s.keep_per_sample = true;
  ScanOptions p = s;
  p.exec = Exec::parallel;
  const auto a = scan_residuals(bad, grid, s);
  const auto b = scan_residuals(bad, grid, p);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.worst_index == b.worst_index);
  CHECK(a.first_failure == b.first_failure);
  CHECK(a.per_sample == b.per_sample);

  const auto ca = classify(bad, grid, {}, Exec::serial);
  const auto cb = classify(bad, grid, {}, Exec::parallel);
  CHECK(ca.verdict == cb.verdict);
  CHECK(ca.sample == cb.sample);
  CHECK(ca.residual == cb.residual);
}

TEST_CASE("hypothesis checks and delta fits agree between serial and parallel") {
  Threads t(4);
  const auto base = make_multicubic_monomial(1, {q(5)});
  const auto f = add_power_noise<double>(base.as_mapping<double>(), q(1, 100), q(1), 3).as_mapping();
  const auto grid = convert_samples<double>(default_grid(1));
  const auto phi = ControlFunction::power(q(1, 10), q(1));
  const auto ha = check_hypothesis(f, phi, grid, {}, Exec::serial);
  const auto hb = check_hypothesis(f, phi, grid, {}, Exec::parallel);
  CHECK(ha.holds == hb.holds);
  CHECK(ha.worst_ratio.value == hb.worst_ratio.value);
  CHECK(ha.witness == hb.witness);
  const auto fa = fit_delta(f, q(1), grid, {}, Exec::serial);
  const auto fb = fit_delta(f, q(1), grid, {}, Exec::parallel);
  CHECK(fa.delta.value == fb.delta.value);
  CHECK(fa.worst == fb.worst);
}
