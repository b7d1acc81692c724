#include "multicubic/grid.hpp"

#include <random>
#include <set>

#include "multicubic/errors.hpp"

namespace multicubic {

SampleGrid integer_cross_grid(std::size_t n, std::size_t var_dim, long lo, long hi) {
  if (n == 0 || var_dim == 0) throw DomainError("grid needs n >= 1 and var_dim >= 1");
  if (lo > hi) throw DomainError("empty integer range");
  const std::size_t dims = n * var_dim;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::size_t per_point = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    if (per_point > (std::size_t{1} << 24) / width) throw DomainError("integer cross grid too large");
    per_point *= width;
  }
  std::vector<Point<Rational>> points;
  points.reserve(per_point);
  for (std::size_t idx = 0; idx < per_point; ++idx) {
    Point<Rational> p(dims);
    std::size_t rest = idx;
    for (std::size_t c = dims; c-- > 0;) {
      p[c] = lo + static_cast<long>(rest % width);
      rest /= width;
    }
    points.push_back(std::move(p));
  }
  SampleGrid grid;
  grid.reserve(per_point * per_point);
  for (const auto& a : points) {
    for (const auto& b : points) grid.push_back({a, b});
  }
  return grid;
}

SampleGrid random_rational_pairs(std::size_t n, std::size_t var_dim, std::size_t count, std::uint64_t seed,
                                 long bound) {
  if (n == 0 || var_dim == 0) throw DomainError("grid needs n >= 1 and var_dim >= 1");
  if (bound < 1) throw DomainError("random rational bound must be >= 1");
  // mt19937_64 output is fully specified; reducing by modulo keeps the
  // sequence identical across standard libraries.
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  auto draw = [&]() {
    const long p = static_cast<long>(rng() % span) - bound;
    const long q = static_cast<long>(rng() % static_cast<std::uint64_t>(bound)) + 1;
    Rational r(p, q);
    r.canonicalize();
    return r;
  };
  const std::size_t dims = n * var_dim;
  SampleGrid grid;
  grid.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    EquationSample<Rational> sample{Point<Rational>(dims), Point<Rational>(dims)};
    for (auto& v : sample.x1) v = draw();
    for (auto& v : sample.x2) v = draw();
    grid.push_back(std::move(sample));
  }
  return grid;
}

SampleGrid default_grid(std::size_t n, std::size_t var_dim, std::uint64_t seed) {
  SampleGrid grid = integer_cross_grid(n, var_dim, -3, 3);
  SampleGrid extra = random_rational_pairs(n, var_dim, 200, seed);
  grid.insert(grid.end(), extra.begin(), extra.end());
  return grid;
}

namespace {

long parse_long(std::string_view text, std::string_view spec) {
  try {
    std::size_t used = 0;
    const long v = std::stol(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + std::string(text) + "' in grid spec '" + std::string(spec) + "'");
  }
}

}  // namespace

SampleGrid parse_grid_spec(std::string_view spec, std::size_t n, std::size_t var_dim) {
  SampleGrid grid;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t plus = spec.find('+', start);
    const std::string_view part = spec.substr(start, plus == std::string_view::npos ? spec.npos : plus - start);
    SampleGrid piece;
    if (part == "default") {
      piece = default_grid(n, var_dim);
    } else if (part.starts_with("int:")) {
      const std::string_view range = part.substr(4);
      const std::size_t dots = range.find("..");
      if (dots == std::string_view::npos) {
        throw ParseError("grid spec '" + std::string(part) + "': expected int:LO..HI");
      }
      piece = integer_cross_grid(n, var_dim, parse_long(range.substr(0, dots), spec),
                                 parse_long(range.substr(dots + 2), spec));
    } else if (part.starts_with("random:")) {
      const std::string_view rest = part.substr(7);
      const std::size_t colon = rest.find(':');
      const long count = parse_long(rest.substr(0, colon), spec);
      const long seed = colon == std::string_view::npos ? 1 : parse_long(rest.substr(colon + 1), spec);
      if (count < 0) throw ParseError("grid spec '" + std::string(part) + "': negative count");
      piece = random_rational_pairs(n, var_dim, static_cast<std::size_t>(count), static_cast<std::uint64_t>(seed));
    } else {
      throw ParseError("unknown grid spec component '" + std::string(part) +
                       "' (expected default, int:LO..HI or random:COUNT[:SEED])");
    }
    grid.insert(grid.end(), piece.begin(), piece.end());
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (grid.empty()) throw ParseError("grid spec '" + std::string(spec) + "' is empty");
  return grid;
}

template <Scalar S>
std::vector<Point<S>> grid_points(const std::vector<EquationSample<S>>& samples) {
  std::set<Point<S>> seen;
  std::vector<Point<S>> out;
  for (const auto& s : samples) {
    for (const Point<S>* p : {&s.x1, &s.x2}) {
      if (seen.insert(*p).second) out.push_back(*p);
    }
  }
  return out;
}

template std::vector<Point<Rational>> grid_points(const std::vector<EquationSample<Rational>>&);
template std::vector<Point<double>> grid_points(const std::vector<EquationSample<double>>&);

std::vector<Rational> linspace(const Rational& lo, const Rational& hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<Rational> out;
  out.reserve(count);
  const Rational step = (hi - lo) / static_cast<long>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out.push_back(lo + step * static_cast<long>(k));
  return out;
}

}  // namespace multicubic
