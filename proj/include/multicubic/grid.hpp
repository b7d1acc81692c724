#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "multicubic/scalar.hpp"

namespace multicubic {

/// An argument pair (x1, x2) in V^n x V^n.
template <Scalar S>
struct EquationSample {
  Point<S> x1;
  Point<S> x2;

  bool operator==(const EquationSample&) const = default;
};

using SampleGrid = std::vector<EquationSample<Rational>>;

/// x1 and x2 each range over {lo..hi}^(n*d); x1 varies slowest.
SampleGrid integer_cross_grid(std::size_t n, std::size_t var_dim, long lo, long hi);

/// count pairs with coordinates p/q, |p| <= bound, 1 <= q <= bound.
SampleGrid random_rational_pairs(std::size_t n, std::size_t var_dim, std::size_t count, std::uint64_t seed,
                                 long bound = 17);

/// {-3..3} cross grid followed by 200 seeded random rational pairs.
SampleGrid default_grid(std::size_t n, std::size_t var_dim = 1, std::uint64_t seed = 1);

/// "default", "int:LO..HI", "random:COUNT[:SEED]", joined with '+'.
SampleGrid parse_grid_spec(std::string_view spec, std::size_t n, std::size_t var_dim = 1);

template <Scalar S>
std::vector<EquationSample<S>> convert_samples(const SampleGrid& grid) {
  std::vector<EquationSample<S>> out;
  out.reserve(grid.size());
  for (const auto& s : grid) out.push_back({convert_vec<S>(s.x1), convert_vec<S>(s.x2)});
  return out;
}

/// Distinct points among all x1 and x2 entries, in order of first appearance.
template <Scalar S>
std::vector<Point<S>> grid_points(const std::vector<EquationSample<S>>& samples);

template <Scalar S>
EquationSample<S> scale_sample(const EquationSample<S>& s, const S& factor) {
  EquationSample<S> out = s;
  for (auto& v : out.x1) v *= factor;
  for (auto& v : out.x2) v *= factor;
  return out;
}

template <Scalar S>
Point<S> scale_point(const Point<S>& x, const S& factor) {
  Point<S> out = x;
  for (auto& v : out) v *= factor;
  return out;
}

/// count evenly spaced rationals lo + (hi-lo) k/(count-1).
std::vector<Rational> linspace(const Rational& lo, const Rational& hi, std::size_t count);

}  // namespace multicubic
