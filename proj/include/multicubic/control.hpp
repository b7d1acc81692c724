#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "multicubic/grid.hpp"
#include "multicubic/scalar.hpp"

namespace multicubic {

/// The non-negative bound phi(x1, x2) on ||D f(x1, x2)||.
///   power:     delta * sum_{i,j} ||x_ij||^alpha
///   product:   delta * prod_{i,j} ||x_ij||^{p_ij}   (p stored row-major, 2 x n)
///   empirical: a lookup table of exact samples
class ControlFunction {
 public:
  struct Power {
    Rational delta;
    Rational alpha;
  };
  struct Product {
    Rational delta;
    std::vector<Rational> exponents;  // index i * n + j, i in {0, 1}
  };
  struct Empirical {
    std::vector<std::pair<EquationSample<Rational>, Rational>> table;
  };

  static ControlFunction power(Rational delta, Rational alpha);
  static ControlFunction product(Rational delta, std::vector<Rational> exponents);
  static ControlFunction empirical(std::vector<std::pair<EquationSample<Rational>, Rational>> table);

  const Power* as_power() const { return std::get_if<Power>(&kind_); }
  const Product* as_product() const { return std::get_if<Product>(&kind_); }
  const Empirical* as_empirical() const { return std::get_if<Empirical>(&kind_); }
  std::string kind_name() const;

  /// Throws SingularityError where a negative exponent meets a zero block,
  /// DomainError for an empirical lookup miss or a malformed product matrix.
  template <Scalar S>
  S operator()(std::span<const S> x1, std::span<const S> x2, std::size_t var_dim = 1) const;

  template <Scalar S>
  S operator()(const EquationSample<S>& s, std::size_t var_dim = 1) const {
    return (*this)(std::span<const S>(s.x1), std::span<const S>(s.x2), var_dim);
  }

 private:
  explicit ControlFunction(std::variant<Power, Product, Empirical> kind) : kind_(std::move(kind)) {}

  std::variant<Power, Product, Empirical> kind_;
};

}  // namespace multicubic
