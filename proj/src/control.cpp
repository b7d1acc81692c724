#include "multicubic/control.hpp"

#include "multicubic/errors.hpp"
#include "multicubic/mappings.hpp"

namespace multicubic {

ControlFunction ControlFunction::power(Rational delta, Rational alpha) {
  if (delta < 0) throw DomainError("control delta must be non-negative");
  return ControlFunction(Power{std::move(delta), std::move(alpha)});
}

ControlFunction ControlFunction::product(Rational delta, std::vector<Rational> exponents) {
  if (delta < 0) throw DomainError("control delta must be non-negative");
  if (exponents.empty() || exponents.size() % 2 != 0) {
    throw DomainError("product control needs a 2 x n exponent matrix");
  }
  return ControlFunction(Product{std::move(delta), std::move(exponents)});
}

ControlFunction ControlFunction::empirical(std::vector<std::pair<EquationSample<Rational>, Rational>> table) {
  for (const auto& [sample, value] : table) {
    if (value < 0) throw DomainError("empirical control values must be non-negative");
  }
  return ControlFunction(Empirical{std::move(table)});
}

std::string ControlFunction::kind_name() const {
  if (as_power() != nullptr) return "power";
  if (as_product() != nullptr) return "product";
  return "empirical";
}

template <Scalar S>
S ControlFunction::operator()(std::span<const S> x1, std::span<const S> x2, std::size_t var_dim) const {
  if (var_dim == 0 || x1.size() != x2.size() || x1.size() % var_dim != 0) {
    throw DomainError("control function: mismatched sample shape");
  }
  const std::size_t n = x1.size() / var_dim;
  if (const Power* p = as_power()) {
    S sum(0);
    for (std::span<const S> x : {x1, x2}) {
      for (std::size_t j = 0; j < n; ++j) sum += pow_abs<S>(variable_norm<S>(x, var_dim, j), p->alpha);
    }
    return from_rational<S>(p->delta) * sum;
  }
  if (const Product* p = as_product()) {
    if (p->exponents.size() != 2 * n) {
      throw DomainError("product control has " + std::to_string(p->exponents.size()) +
                        " exponents, expected 2n = " + std::to_string(2 * n));
    }
    S prod = from_rational<S>(p->delta);
    for (std::size_t i = 0; i < 2; ++i) {
      const std::span<const S> x = i == 0 ? x1 : x2;
      for (std::size_t j = 0; j < n; ++j) {
        prod *= pow_abs<S>(variable_norm<S>(x, var_dim, j), p->exponents[i * n + j]);
      }
    }
    return prod;
  }
  const Empirical& e = *as_empirical();
  for (const auto& [sample, value] : e.table) {
    if (sample.x1.size() != x1.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < x1.size() && match; ++i) {
      match = from_rational<S>(sample.x1[i]) == x1[i] && from_rational<S>(sample.x2[i]) == x2[i];
    }
    if (match) return from_rational<S>(value);
  }
  throw DomainError("empirical control is undefined at the requested sample");
}

template Rational ControlFunction::operator()(std::span<const Rational>, std::span<const Rational>,
                                              std::size_t) const;
template double ControlFunction::operator()(std::span<const double>, std::span<const double>, std::size_t) const;

}  // namespace multicubic
