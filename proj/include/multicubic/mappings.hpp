#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "multicubic/scalar.hpp"

namespace multicubic {

/// Domain V^n with V = S^var_dim, codomain W = S^codim.
struct Shape {
  std::size_t vars = 1;
  std::size_t var_dim = 1;
  std::size_t codim = 1;

  std::size_t point_size() const { return vars * var_dim; }
  bool operator==(const Shape&) const = default;
};

/// Type-erased evaluable mapping V^n -> W. Immutable and cheap to copy.
template <Scalar S>
class Mapping {
 public:
  using Fn = std::function<Vec<S>(std::span<const S>)>;

  Mapping(Shape shape, Fn fn) : shape_(shape), fn_(std::move(fn)) {}

  const Shape& shape() const { return shape_; }

  /// Throws DomainError when x does not have shape().point_size() coordinates.
  Vec<S> operator()(std::span<const S> x) const;

 private:
  Shape shape_;
  Fn fn_;
};

template <Scalar S>
Vec<S> eval(const Mapping<S>& f, std::span<const S> x) {
  return f(x);
}

/// ||x_j||: max norm of the block holding variable j.
template <Scalar S>
S variable_norm(std::span<const S> x, std::size_t var_dim, std::size_t j) {
  return norm_max(x.subspan(j * var_dim, var_dim));
}

struct PolynomialTerm {
  std::vector<unsigned> degrees;  // one per variable
  std::vector<Rational> coeff;    // one per codomain coordinate

  bool operator==(const PolynomialTerm&) const = default;
};

inline constexpr unsigned kDefaultMaxDegree = 8;

/// Sum of coeff * prod_j x_j^{d_j} with exact rational coefficients.
class PolynomialModel {
 public:
  PolynomialModel(std::size_t n, std::size_t m, std::vector<PolynomialTerm> terms,
                  unsigned max_degree = kDefaultMaxDegree);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  unsigned max_degree() const { return max_degree_; }
  const std::vector<PolynomialTerm>& terms() const { return terms_; }
  Shape shape() const { return Shape{n_, 1, m_}; }

  template <Scalar S>
  Vec<S> eval(std::span<const S> x) const;

  /// The model g with g(x) = f(r x): each coefficient picks up r^{sum d_j}.
  PolynomialModel rescaled(const Rational& r) const;

  template <Scalar S>
  Mapping<S> as_mapping() const;

  bool operator==(const PolynomialModel&) const = default;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<PolynomialTerm> terms_;
  unsigned max_degree_;
};

/// f(x) = c * prod_{j=1}^{n} x_j^3.
PolynomialModel make_multicubic_monomial(std::size_t n, std::vector<Rational> c);

PolynomialModel make_zero_model(std::size_t n, std::size_t m);

/// Deterministic pseudorandom value in [-1, 1) attached to a point. The hash
/// runs over the IEEE bits of the coordinates, so u(2x) and u(x) are unrelated.
double noise_unit(std::uint64_t seed, std::size_t component, std::span<const double> coords);

struct NoiseSpec {
  enum class Kind { none, power, product };

  Kind kind = Kind::none;
  Rational delta{0};
  Rational alpha{0};                // power noise
  std::vector<Rational> exponents;  // product noise, one per variable
  std::uint64_t seed = 0;

  bool operator==(const NoiseSpec&) const = default;
};

/// base(x) + noise(x), where
///   power:   noise(x) = delta * u(x) * sum_j ||x_j||^alpha
///   product: noise(x) = delta * u(x) * prod_j ||x_j||^{p_j}
/// and u is noise_unit per codomain component. ||x_j|| is the max norm of
/// variable j.
template <Scalar S>
class PerturbedMapping {
 public:
  PerturbedMapping(Mapping<S> base, NoiseSpec noise);

  const Mapping<S>& base() const { return base_; }
  const NoiseSpec& noise_spec() const { return noise_; }
  Shape shape() const { return base_.shape(); }

  /// The noise term alone. Throws SingularityError where it is undefined.
  Vec<S> noise(std::span<const S> x) const;
  /// The scalar envelope delta * sum_j ||x_j||^alpha (or the product form).
  S envelope(std::span<const S> x) const;

  Vec<S> eval(std::span<const S> x) const;
  Mapping<S> as_mapping() const;

 private:
  Mapping<S> base_;
  NoiseSpec noise_;
};

template <Scalar S>
PerturbedMapping<S> add_power_noise(Mapping<S> base, const Rational& delta, const Rational& alpha,
                                    std::uint64_t seed);

template <Scalar S>
PerturbedMapping<S> add_product_noise(Mapping<S> base, const Rational& delta,
                                      std::vector<Rational> exponents, std::uint64_t seed);

/// What a model file describes: a polynomial, an optional perturbation and a
/// preferred evaluation mode.
struct MappingModel {
  PolynomialModel base;
  NoiseSpec noise;
  Mode mode = Mode::exact;

  bool operator==(const MappingModel&) const = default;
};

template <Scalar S>
Mapping<S> realize(const MappingModel& model);

enum class NormKind { euclidean, max };

/// h(a) = ||a||^3 * a0 on R^m, a single variable of dimension m.
/// Satisfies h(2a) = 8 h(a) but is not cubic.
class NormCubeMapping {
 public:
  NormCubeMapping(std::vector<double> anchor, NormKind norm);

  std::size_t m() const { return anchor_.size(); }
  NormKind norm_kind() const { return norm_; }
  const std::vector<double>& anchor() const { return anchor_; }
  Shape shape() const { return Shape{1, anchor_.size(), anchor_.size()}; }

  double norm(std::span<const double> a) const;
  Vec<double> eval(std::span<const double> a) const;
  Mapping<double> as_mapping() const;

 private:
  std::vector<double> anchor_;
  NormKind norm_;
};

/// Throws DomainError when m == 0 or a0 has the wrong length.
NormCubeMapping make_norm_cube(std::size_t m, std::vector<double> anchor, NormKind norm);

}  // namespace multicubic
