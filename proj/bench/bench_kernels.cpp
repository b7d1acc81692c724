// Serial vs OpenMP kernels on the residual scan and classifier.

#include <benchmark/benchmark.h>

#include "multicubic/equation.hpp"
#include "multicubic/stability.hpp"

using namespace multicubic;

namespace {

Rational coeff(long p, long q) {
  Rational r{Integer(p), Integer(q)};
  r.canonicalize();
  return r;
}

template <Scalar S>
void scan(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = make_multicubic_monomial(n, {coeff(-7, 3)}).as_mapping<S>();
  const auto grid = convert_samples<S>(random_rational_pairs(n, 1, 400, 1));
  ScanOptions opts;
  opts.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(scan_residuals(f, grid, opts));
  state.SetItemsProcessed(static_cast<long>(state.iterations() * grid.size()));
}

void scan_exact(benchmark::State& state, Exec exec) { scan<Rational>(state, exec); }
void scan_float(benchmark::State& state, Exec exec) { scan<double>(state, exec); }

void classify_grid(benchmark::State& state, Exec exec) {
  const auto f = make_multicubic_monomial(2, {coeff(3, 4)}).as_mapping<Rational>();
  const auto grid = convert_samples<Rational>(default_grid(2));
  for (auto _ : state) benchmark::DoNotOptimize(classify(f, grid, {}, exec));
}

void hypothesis(benchmark::State& state, Exec exec) {
  const auto base = make_multicubic_monomial(1, {coeff(5, 1)}).as_mapping<double>();
  const auto f = add_power_noise<double>(base, coeff(1, 100), coeff(1, 1), 3).as_mapping();
  const auto grid = convert_samples<double>(random_rational_pairs(1, 1, 20000, 2));
  const auto phi = ControlFunction::power(coeff(1, 5), coeff(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(check_hypothesis(f, phi, grid, {}, exec));
}

}  // namespace

BENCHMARK_CAPTURE(scan_exact, serial, Exec::serial)->Arg(1)->Arg(3);
BENCHMARK_CAPTURE(scan_exact, parallel, Exec::parallel)->Arg(1)->Arg(3);
BENCHMARK_CAPTURE(scan_float, serial, Exec::serial)->Arg(1)->Arg(3);
BENCHMARK_CAPTURE(scan_float, parallel, Exec::parallel)->Arg(1)->Arg(3);
BENCHMARK_CAPTURE(classify_grid, serial, Exec::serial);
BENCHMARK_CAPTURE(classify_grid, parallel, Exec::parallel);
BENCHMARK_CAPTURE(hypothesis, serial, Exec::serial);
BENCHMARK_CAPTURE(hypothesis, parallel, Exec::parallel);

BENCHMARK_MAIN();
