#include "multicubic/mappings.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "multicubic/errors.hpp"

namespace multicubic {

template <Scalar S>
Vec<S> Mapping<S>::operator()(std::span<const S> x) const {
  if (x.size() != shape_.point_size()) {
    throw DomainError("arity mismatch: mapping expects " + std::to_string(shape_.point_size()) +
                      " coordinates, got " + std::to_string(x.size()));
  }
  return fn_(x);
}

template class Mapping<Rational>;
template class Mapping<double>;

// ---------------------------------------------------------------------------
// PolynomialModel

PolynomialModel::PolynomialModel(std::size_t n, std::size_t m, std::vector<PolynomialTerm> terms,
                                 unsigned max_degree)
    : n_(n), m_(m), terms_(std::move(terms)), max_degree_(max_degree) {
  if (n_ == 0) throw DomainError("polynomial model needs n >= 1");
  if (m_ == 0) throw DomainError("polynomial model needs m >= 1");
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    if (term.degrees.size() != n_) {
      throw DomainError("term " + std::to_string(t) + ": degrees has length " +
                        std::to_string(term.degrees.size()) + ", expected n = " + std::to_string(n_));
    }
    if (term.coeff.size() != m_) {
      throw DomainError("term " + std::to_string(t) + ": coeff has length " + std::to_string(term.coeff.size()) +
                        ", expected m = " + std::to_string(m_));
    }
    for (unsigned d : term.degrees) {
      if (d > max_degree_) {
        throw DomainError("term " + std::to_string(t) + ": degree " + std::to_string(d) + " exceeds cap " +
                          std::to_string(max_degree_));
      }
    }
  }
}

namespace {

template <Scalar S>
struct TermTable {
  std::size_t n;
  std::size_t m;
  unsigned max_used;
  std::vector<std::vector<unsigned>> degrees;
  std::vector<Vec<S>> coeffs;
};

template <Scalar S>
TermTable<S> make_table(const PolynomialModel& model) {
  TermTable<S> table{model.n(), model.m(), 0, {}, {}};
  for (const auto& term : model.terms()) {
    table.degrees.push_back(term.degrees);
    table.coeffs.push_back(convert_vec<S>(term.coeff));
    for (unsigned d : term.degrees) table.max_used = std::max(table.max_used, d);
  }
  return table;
}

template <Scalar S>
Vec<S> eval_table(const TermTable<S>& table, std::span<const S> x) {
  if (x.size() != table.n) {
    throw DomainError("arity mismatch: model expects " + std::to_string(table.n) + " coordinates, got " +
                      std::to_string(x.size()));
  }
  // powers[j][d] = x_j^d
  std::vector<Vec<S>> powers(table.n);
  for (std::size_t j = 0; j < table.n; ++j) {
    powers[j].resize(table.max_used + 1);
    powers[j][0] = S(1);
    for (unsigned d = 1; d <= table.max_used; ++d) powers[j][d] = powers[j][d - 1] * x[j];
  }
  Vec<S> out(table.m, S(0));
  S monomial;
  for (std::size_t t = 0; t < table.degrees.size(); ++t) {
    monomial = S(1);
    for (std::size_t j = 0; j < table.n; ++j) monomial *= powers[j][table.degrees[t][j]];
    for (std::size_t c = 0; c < table.m; ++c) out[c] += table.coeffs[t][c] * monomial;
  }
  return out;
}

}  // namespace

template <Scalar S>
Vec<S> PolynomialModel::eval(std::span<const S> x) const {
  if constexpr (is_exact_v<S>) {
    if (x.size() != n_) {
      throw DomainError("arity mismatch: model expects " + std::to_string(n_) + " coordinates, got " +
                        std::to_string(x.size()));
    }
    Vec<S> out(m_, S(0));
    S monomial;
    for (const auto& term : terms_) {
      monomial = 1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (term.degrees[j] != 0) monomial *= ipow(x[j], term.degrees[j]);
      }
      for (std::size_t c = 0; c < m_; ++c) out[c] += term.coeff[c] * monomial;
    }
    return out;
  } else {
    return eval_table(make_table<S>(*this), x);
  }
}

template Vec<Rational> PolynomialModel::eval<Rational>(std::span<const Rational>) const;
template Vec<double> PolynomialModel::eval<double>(std::span<const double>) const;

PolynomialModel PolynomialModel::rescaled(const Rational& r) const {
  std::vector<PolynomialTerm> scaled = terms_;
  for (auto& term : scaled) {
    unsigned total = 0;
    for (unsigned d : term.degrees) total += d;
    const Rational factor = ipow(r, total);
    for (auto& c : term.coeff) c *= factor;
  }
  return PolynomialModel(n_, m_, std::move(scaled), max_degree_);
}

template <Scalar S>
Mapping<S> PolynomialModel::as_mapping() const {
  auto table = std::make_shared<const TermTable<S>>(make_table<S>(*this));
  return Mapping<S>(shape(), [table](std::span<const S> x) { return eval_table(*table, x); });
}

template Mapping<Rational> PolynomialModel::as_mapping<Rational>() const;
template Mapping<double> PolynomialModel::as_mapping<double>() const;

PolynomialModel make_multicubic_monomial(std::size_t n, std::vector<Rational> c) {
  const std::size_t m = c.size();
  return PolynomialModel(n, m, {PolynomialTerm{std::vector<unsigned>(n, 3), std::move(c)}});
}

PolynomialModel make_zero_model(std::size_t n, std::size_t m) { return PolynomialModel(n, m, {}); }

// ---------------------------------------------------------------------------
// Noise

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double noise_unit(std::uint64_t seed, std::size_t component, std::span<const double> coords) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (static_cast<std::uint64_t>(component) + 0x632be59bd9b4e019ULL));
  for (double c : coords) {
    const double normalized = c == 0.0 ? 0.0 : c;  // fold -0 into +0
    h = mix64(h ^ std::bit_cast<std::uint64_t>(normalized));
  }
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

template <Scalar S>
PerturbedMapping<S>::PerturbedMapping(Mapping<S> base, NoiseSpec noise)
    : base_(std::move(base)), noise_(std::move(noise)) {
  if (noise_.delta < 0) throw DomainError("noise delta must be non-negative");
  if (noise_.kind == NoiseSpec::Kind::product && noise_.exponents.size() != base_.shape().vars) {
    throw DomainError("product noise needs one exponent per variable");
  }
}

template <Scalar S>
S PerturbedMapping<S>::envelope(std::span<const S> x) const {
  const Shape& shape = base_.shape();
  switch (noise_.kind) {
    case NoiseSpec::Kind::none:
      return S(0);
    case NoiseSpec::Kind::power: {
      S sum(0);
      for (std::size_t j = 0; j < shape.vars; ++j) {
        sum += pow_abs<S>(variable_norm<S>(x, shape.var_dim, j), noise_.alpha);
      }
      return from_rational<S>(noise_.delta) * sum;
    }
    case NoiseSpec::Kind::product: {
      S prod(1);
      for (std::size_t j = 0; j < shape.vars; ++j) {
        prod *= pow_abs<S>(variable_norm<S>(x, shape.var_dim, j), noise_.exponents[j]);
      }
      return from_rational<S>(noise_.delta) * prod;
    }
  }
  return S(0);
}

template <Scalar S>
Vec<S> PerturbedMapping<S>::noise(std::span<const S> x) const {
  const Shape& shape = base_.shape();
  if (x.size() != shape.point_size()) {
    throw DomainError("arity mismatch: mapping expects " + std::to_string(shape.point_size()) +
                      " coordinates, got " + std::to_string(x.size()));
  }
  Vec<S> out(shape.codim, S(0));
  if (noise_.kind == NoiseSpec::Kind::none || sgn(noise_.delta) == 0) return out;
  const S scale = envelope(x);
  std::vector<double> coords(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) coords[i] = to_double(x[i]);
  for (std::size_t c = 0; c < shape.codim; ++c) {
    const double u = noise_unit(noise_.seed, c, coords);
    if constexpr (is_exact_v<S>) {
      out[c] = rational_from_double(u) * scale;
    } else {
      out[c] = u * scale;
    }
  }
  return out;
}

template <Scalar S>
Vec<S> PerturbedMapping<S>::eval(std::span<const S> x) const {
  Vec<S> out = base_(x);
  if (noise_.kind == NoiseSpec::Kind::none) return out;
  const Vec<S> extra = noise(x);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] += extra[c];
  return out;
}

template <Scalar S>
Mapping<S> PerturbedMapping<S>::as_mapping() const {
  auto self = std::make_shared<const PerturbedMapping<S>>(*this);
  return Mapping<S>(shape(), [self](std::span<const S> x) { return self->eval(x); });
}

template class PerturbedMapping<Rational>;
template class PerturbedMapping<double>;

template <Scalar S>
PerturbedMapping<S> add_power_noise(Mapping<S> base, const Rational& delta, const Rational& alpha,
                                    std::uint64_t seed) {
  NoiseSpec spec;
  spec.kind = NoiseSpec::Kind::power;
  spec.delta = delta;
  spec.alpha = alpha;
  spec.seed = seed;
  return PerturbedMapping<S>(std::move(base), std::move(spec));
}

template PerturbedMapping<Rational> add_power_noise(Mapping<Rational>, const Rational&, const Rational&,
                                                    std::uint64_t);
template PerturbedMapping<double> add_power_noise(Mapping<double>, const Rational&, const Rational&,
                                                  std::uint64_t);

template <Scalar S>
PerturbedMapping<S> add_product_noise(Mapping<S> base, const Rational& delta, std::vector<Rational> exponents,
                                      std::uint64_t seed) {
  NoiseSpec spec;
  spec.kind = NoiseSpec::Kind::product;
  spec.delta = delta;
  spec.exponents = std::move(exponents);
  spec.seed = seed;
  return PerturbedMapping<S>(std::move(base), std::move(spec));
}

template PerturbedMapping<Rational> add_product_noise(Mapping<Rational>, const Rational&,
                                                      std::vector<Rational>, std::uint64_t);
template PerturbedMapping<double> add_product_noise(Mapping<double>, const Rational&, std::vector<Rational>,
                                                    std::uint64_t);

template <Scalar S>
Mapping<S> realize(const MappingModel& model) {
  Mapping<S> base = model.base.as_mapping<S>();
  if (model.noise.kind == NoiseSpec::Kind::none) return base;
  return PerturbedMapping<S>(std::move(base), model.noise).as_mapping();
}

template Mapping<Rational> realize<Rational>(const MappingModel&);
template Mapping<double> realize<double>(const MappingModel&);

// ---------------------------------------------------------------------------
// NormCubeMapping

NormCubeMapping::NormCubeMapping(std::vector<double> anchor, NormKind norm)
    : anchor_(std::move(anchor)), norm_(norm) {
  if (anchor_.empty()) throw DomainError("norm-cube mapping needs dimension m >= 1");
}

double NormCubeMapping::norm(std::span<const double> a) const {
  if (norm_ == NormKind::max) return norm_max(a);
  double sum = 0.0;
  for (double v : a) sum += v * v;
  return std::sqrt(sum);
}

Vec<double> NormCubeMapping::eval(std::span<const double> a) const {
  if (a.size() != anchor_.size()) {
    throw DomainError("arity mismatch: norm-cube mapping expects " + std::to_string(anchor_.size()) +
                      " coordinates, got " + std::to_string(a.size()));
  }
  const double r = norm(a);
  const double cube = r * r * r;
  Vec<double> out(anchor_.size());
  for (std::size_t i = 0; i < anchor_.size(); ++i) out[i] = cube * anchor_[i];
  return out;
}

Mapping<double> NormCubeMapping::as_mapping() const {
  auto self = std::make_shared<const NormCubeMapping>(*this);
  return Mapping<double>(shape(), [self](std::span<const double> a) { return self->eval(a); });
}

NormCubeMapping make_norm_cube(std::size_t m, std::vector<double> anchor, NormKind norm) {
  if (m == 0) throw DomainError("norm-cube mapping needs dimension m >= 1");
  if (anchor.size() != m) throw DomainError("anchor a0 must have " + std::to_string(m) + " entries");
  return NormCubeMapping(std::move(anchor), norm);
}

}  // namespace multicubic
