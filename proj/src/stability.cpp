#include "multicubic/stability.hpp"

#include <cmath>
#include <limits>

#include "multicubic/errors.hpp"

namespace multicubic {

namespace {

template <Scalar S>
Vec<S> vec_sub(const Vec<S>& a, const Vec<S>& b) {
  Vec<S> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

template <Scalar S>
bool all_finite(const Vec<S>& v) {
  if constexpr (is_exact_v<S>) {
    (void)v;
    return true;
  } else {
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }
}

/// 2^e for a rational exponent; exact mode needs an integer.
template <Scalar S>
S pow2_rational(const Rational& e) {
  if constexpr (is_exact_v<S>) {
    if (!is_integer(e) || !e.get_num().fits_slong_p()) {
      throw DomainError("exact mode requires integer exponents, got " + format_rational(e));
    }
    return pow2<S>(e.get_num().get_si());
  } else {
    return std::exp2(e.get_d());
  }
}

template <Scalar S>
Extended<S> ratio_of(const S& num, const S& den) {
  if (sgn(den) == 0) return sgn(num) == 0 ? Extended<S>{} : Extended<S>::inf();
  return Extended<S>{S(num / den), false};
}

std::size_t checked_tree_size(std::size_t branching, std::size_t depth) {
  std::size_t nodes = 1;
  std::size_t level = 1;
  for (std::size_t l = 0; l < depth; ++l) {
    if (branching > 1 && level > (std::size_t{1} << 22) / branching) {
      throw DomainError("operator iteration tree too large; reduce the iteration count");
    }
    level *= branching;
    nodes += level;
  }
  return nodes;
}

template <Scalar S>
std::vector<Vec<S>> all_levels(const OperatorDescriptor<S>& op, const Mapping<S>& phi0, std::span<const S> x,
                               std::size_t depth) {
  std::vector<Vec<S>> out(depth + 1);
  out[0] = phi0(x);
  if (depth == 0) return out;
  for (std::size_t l = 1; l <= depth; ++l) out[l].assign(out[0].size(), S(0));
  for (const auto& term : op.terms) {
    const S c = term.coefficient(x);
    if (sgn(c) == 0) continue;
    const Point<S> y = term.transform(x);
    const auto inner = all_levels(op, phi0, std::span<const S>(y), depth - 1);
    for (std::size_t l = 1; l <= depth; ++l) {
      for (std::size_t k = 0; k < out[l].size(); ++k) out[l][k] += c * inner[l - 1][k];
    }
  }
  return out;
}

template <Scalar S>
std::vector<S> majorant_levels(const OperatorDescriptor<S>& op, const std::function<S(std::span<const S>)>& theta,
                               std::span<const S> x, std::size_t depth) {
  std::vector<S> out(depth + 1, S(0));
  out[0] = theta(x);
  if (depth == 0) return out;
  for (const auto& term : op.terms) {
    const S c = abs_value(term.coefficient(x));
    if (sgn(c) == 0) continue;
    const Point<S> y = term.transform(x);
    const auto inner = majorant_levels(op, theta, std::span<const S>(y), depth - 1);
    for (std::size_t l = 1; l <= depth; ++l) out[l] += c * inner[l - 1];
  }
  return out;
}

template <Scalar S>
bool looks_divergent(const std::vector<S>& terms) {
  if (terms.size() < 2) return false;
  const S& last = terms.back();
  return sgn(last) > 0 && !(last < terms[(terms.size() - 1) / 2]);
}

}  // namespace

template <Scalar S>
OperatorDescriptor<S> rescaling_operator(std::size_t n, int beta) {
  const S c = pow2<S>(-3L * static_cast<long>(n) * beta);
  const S g = pow2<S>(beta);
  OperatorDescriptor<S> op;
  op.terms.push_back(OperatorTerm<S>{[g](std::span<const S> x) {
                                       Point<S> y(x.begin(), x.end());
                                       for (auto& v : y) v *= g;
                                       return y;
                                     },
                                     [c](std::span<const S>) { return c; }});
  return op;
}

template <Scalar S>
IterationResult<S> iterate_operator(const OperatorDescriptor<S>& op, const Mapping<S>& phi0,
                                    const std::function<S(std::span<const S>)>& theta, std::span<const S> x,
                                    std::size_t iterations, double tolerance) {
  if (op.terms.empty()) throw DomainError("operator needs at least one term");
  checked_tree_size(op.terms.size(), iterations);
  IterationResult<S> out;
  out.theta_terms = majorant_levels(op, theta, x, iterations);
  for (const S& t : out.theta_terms) out.theta_star += t;
  out.diverged = looks_divergent(out.theta_terms);
  if (out.diverged) return out;
  const auto levels = all_levels(op, phi0, x, iterations);
  for (std::size_t l = 1; l < levels.size(); ++l) {
    out.increments.push_back(norm_max<S>(vec_sub(levels[l], levels[l - 1])));
  }
  out.estimate = levels.back();
  out.converged = !out.increments.empty() && to_double(out.increments.back()) <= tolerance;
  return out;
}

int choose_beta(const Rational& alpha, std::size_t n) {
  const Rational critical(3 * static_cast<long>(n));
  if (alpha == critical) {
    throw UnsupportedExponentError("alpha = 3n = " + format_rational(critical) + " is the excluded critical exponent");
  }
  return alpha < critical ? 1 : -1;
}

template <Scalar S>
Vec<S> apply_t_pow(const Mapping<S>& f, int beta, std::size_t l, std::span<const S> x) {
  if (beta != 1 && beta != -1) throw DomainError("beta must be +1 or -1");
  const long shift = beta * static_cast<long>(l);
  const S up = pow2<S>(shift);
  Point<S> y(x.begin(), x.end());
  for (auto& v : y) v *= up;
  Vec<S> out = f(y);
  const S down = pow2<S>(-3L * static_cast<long>(f.shape().vars) * shift);
  for (auto& v : out) v *= down;
  return out;
}

template <Scalar S>
Mapping<S> t_pow_mapping(const Mapping<S>& f, int beta, std::size_t l) {
  if (beta != 1 && beta != -1) throw DomainError("beta must be +1 or -1");
  return Mapping<S>(f.shape(), [f, beta, l](std::span<const S> x) { return apply_t_pow(f, beta, l, x); });
}

template <Scalar S>
Vec<S> contraction_residual(const Mapping<S>& f, std::span<const S> x) {
  Point<S> doubled(x.begin(), x.end());
  for (auto& v : doubled) v *= 2;
  Vec<S> out = f(doubled);
  const Vec<S> base = f(x);
  const S factor = pow2<S>(3L * static_cast<long>(f.shape().vars));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= factor * base[i];
  return out;
}

template <Scalar S>
PhiSeries<S> phi_series(const ControlFunction& phi, std::span<const S> x, std::size_t n, int beta,
                        std::size_t iterations, std::size_t var_dim) {
  if (beta != 1 && beta != -1) throw DomainError("beta must be +1 or -1");
  if (x.size() != n * var_dim) throw DomainError("phi_series: point does not match arity");
  const long nn = static_cast<long>(n);
  const long prefactor = beta == 1 ? -4 * nn : -nn;
  const Point<S> zero(x.size(), S(0));
  PhiSeries<S> out;
  std::vector<S> terms;
  terms.reserve(iterations + 1);
  for (std::size_t l = 0; l <= iterations; ++l) {
    const long lv = static_cast<long>(l);
    const long e = beta == 1 ? lv : -lv - 1;
    Point<S> y(x.begin(), x.end());
    const S up = pow2<S>(e);
    for (auto& v : y) v *= up;
    const S value = phi(std::span<const S>(y), std::span<const S>(zero), var_dim);
    terms.push_back(pow2<S>(prefactor - 3 * nn * beta * lv) * value);
    out.partial += terms.back();
  }
  bool all_zero = true;
  for (const S& t : terms) all_zero = all_zero && sgn(t) == 0;
  if (all_zero) {
    out.tail = S(0);
    return out;
  }
  if (const auto* p = phi.as_power()) {
    const Rational exponent = Rational(beta) * (p->alpha - 3 * nn);
    out.diverged = exponent >= 0;
    out.ratio = pow2_rational<S>(exponent);
    if (!out.diverged) {
      const S& r = *out.ratio;
      out.tail = S(terms.back() * r / (S(1) - r));
    }
  } else {
    out.diverged = looks_divergent(terms);
  }
  return out;
}

std::string to_string(BoundVariant variant) { return variant == BoundVariant::closed ? "closed" : "series"; }

template <Scalar S>
S phi_closed_form(std::span<const S> x, const Rational& delta, const Rational& alpha, std::size_t n,
                  BoundVariant variant, std::size_t var_dim) {
  const long nn = static_cast<long>(n);
  if (alpha == 3 * nn) {
    throw UnsupportedExponentError("alpha = 3n = " + std::to_string(3 * nn) + " is the excluded critical exponent");
  }
  if (alpha <= 0) throw DomainError("closed-form bound needs alpha > 0");
  if (x.size() != n * var_dim) throw DomainError("phi_closed_form: point does not match arity");
  S sum(0);
  for (std::size_t j = 0; j < n; ++j) sum += pow_abs<S>(variable_norm<S>(x, var_dim, j), alpha);
  const S d = from_rational<S>(delta);
  const S four_n = pow2<S>(4 * nn);
  const S alpha_n = pow2_rational<S>(alpha + nn);
  if (alpha < 3 * nn) return S(d / (four_n - alpha_n) * sum);
  const S lead = variant == BoundVariant::closed ? pow2_rational<S>(alpha) : S(1);
  return S(lead * d / (alpha_n - four_n) * sum);
}

template <Scalar S>
HypothesisCheck<S> check_hypothesis(const Mapping<S>& f, const ControlFunction& phi,
                                    const std::vector<EquationSample<S>>& samples, const Tolerances& tol,
                                    Exec exec) {
  struct Row {
    bool singular = false;
    bool violated = false;
    Extended<S> ratio;
    S residual{0};
    S bound{0};
  };
  const std::size_t var_dim = f.shape().var_dim;
  const auto rows = map_indices<Row>(exec, samples.size(), [&](std::size_t i) {
    Row row;
    try {
      row.bound = phi(samples[i], var_dim);
    } catch (const SingularityError&) {
      row.singular = true;
      return row;
    }
    const DiffEvaluation<S> d = evaluate_diff(f, samples[i]);
    row.residual = norm_max<S>(d.residual);
    if constexpr (is_exact_v<S>) {
      row.violated = row.bound < row.residual;
    } else {
      row.violated = row.residual > row.bound + tol.equation * d.scale;
    }
    row.ratio = (!row.violated && sgn(row.bound) == 0) ? Extended<S>{} : ratio_of(row.residual, row.bound);
    return row;
  });
  HypothesisCheck<S> out;
  out.samples = samples.size();
  std::size_t witness = npos;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].singular) {
      ++out.singular;
      continue;
    }
    if (out.worst_ratio < rows[i].ratio) out.worst_ratio = rows[i].ratio;
    if (rows[i].violated) {
      out.holds = false;
      if (witness == npos || rows[witness].ratio < rows[i].ratio) witness = i;
    }
  }
  if (witness != npos) {
    out.witness = samples[witness];
    out.residual_at_witness = rows[witness].residual;
    out.phi_at_witness = rows[witness].bound;
    out.worst_ratio = rows[witness].ratio;
  }
  return out;
}

template <Scalar S>
FitDelta<S> fit_delta(const Mapping<S>& f, const Rational& alpha, const std::vector<EquationSample<S>>& samples,
                      const Tolerances& tol, Exec exec) {
  const ControlFunction unit = ControlFunction::power(Rational(1), alpha);
  const std::size_t var_dim = f.shape().var_dim;
  enum class Status { ratio, skipped, singular };
  struct Row {
    Status status = Status::ratio;
    Extended<S> ratio;
  };
  const auto rows = map_indices<Row>(exec, samples.size(), [&](std::size_t i) {
    Row row;
    S denom;
    try {
      denom = unit(samples[i], var_dim);
    } catch (const SingularityError&) {
      row.status = Status::singular;
      return row;
    }
    const DiffEvaluation<S> d = evaluate_diff(f, samples[i]);
    const bool negligible = residual_negligible<S>(d.residual, d.scale, tol.equation);
    if (sgn(denom) == 0 && negligible) {
      row.status = Status::skipped;
      return row;
    }
    row.ratio = negligible ? Extended<S>{} : ratio_of(norm_max<S>(d.residual), denom);
    return row;
  });
  FitDelta<S> out;
  std::size_t worst = npos;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    switch (rows[i].status) {
      case Status::skipped:
        ++out.skipped;
        continue;
      case Status::singular:
        ++out.singular;
        continue;
      case Status::ratio:
        break;
    }
    if (worst == npos || rows[worst].ratio < rows[i].ratio) worst = i;
  }
  if (worst != npos) {
    out.delta = rows[worst].ratio;
    out.worst = samples[worst];
  }
  out.admissible = !out.delta.infinite;
  return out;
}

template <Scalar S>
DecayCheck<S> dpow_decay_check(const Mapping<S>& f, const ControlFunction& phi, int beta,
                               const std::vector<EquationSample<S>>& samples, std::size_t max_level,
                               const Tolerances& tol, Exec exec) {
  if (beta != 1 && beta != -1) throw DomainError("beta must be +1 or -1");
  const long n = static_cast<long>(f.shape().vars);
  const std::size_t var_dim = f.shape().var_dim;
  std::vector<Mapping<S>> iterates;
  for (std::size_t l = 0; l <= max_level; ++l) iterates.push_back(t_pow_mapping(f, beta, l));

  struct Row {
    bool skipped = false;
    bool hypothesis = true;
    bool ok = true;
    Extended<S> ratio;
  };
  const std::size_t total = samples.size() * (max_level + 1);
  const auto rows = map_indices<Row>(exec, total, [&](std::size_t idx) {
    const std::size_t l = idx / samples.size();
    const EquationSample<S>& s = samples[idx % samples.size()];
    const long shift = beta * static_cast<long>(l);
    const EquationSample<S> scaled = scale_sample(s, pow2<S>(shift));
    Row row;
    S bound;
    try {
      bound = phi(scaled, var_dim);
    } catch (const SingularityError&) {
      row.skipped = true;
      return row;
    }
    const DiffEvaluation<S> base = evaluate_diff(f, scaled);
    const S base_norm = norm_max<S>(base.residual);
    const DiffEvaluation<S> lhs = evaluate_diff(iterates[l], s);
    const S lhs_norm = norm_max<S>(lhs.residual);
    const S rhs = pow2<S>(-3 * n * shift) * bound;
    if constexpr (is_exact_v<S>) {
      row.hypothesis = !(bound < base_norm);
      row.ok = !(rhs < lhs_norm);
    } else {
      row.hypothesis = base_norm <= bound + tol.equation * base.scale;
      row.ok = lhs_norm <= rhs + tol.equation * lhs.scale;
    }
    row.ratio = (row.ok && sgn(rhs) == 0) ? Extended<S>{} : ratio_of(lhs_norm, rhs);
    return row;
  });

  DecayCheck<S> out;
  std::size_t worst = npos;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const Row& row = rows[idx];
    if (row.skipped) continue;
    ++out.checks;
    if (!row.hypothesis) {
      if (out.hypothesis_held) {
        const std::size_t l = idx / samples.size();
        out.hypothesis_witness =
            scale_sample(samples[idx % samples.size()], pow2<S>(beta * static_cast<long>(l)));
      }
      out.hypothesis_held = false;
      continue;
    }
    if (!row.ok) out.holds = false;
    if (worst == npos || rows[worst].ratio < row.ratio) worst = idx;
  }
  if (worst != npos) {
    out.worst_ratio = rows[worst].ratio;
    out.worst_level = worst / samples.size();
    out.worst_sample = samples[worst % samples.size()];
  }
  return out;
}

std::string to_string(HyperOutcome outcome) {
  switch (outcome) {
    case HyperOutcome::hypothesis_violated:
      return "HypothesisViolated";
    case HyperOutcome::multicubic_on_grid:
      return "MultiCubicOnGrid";
    case HyperOutcome::hyperstability_counterexample:
      return "HyperstabilityCounterexample";
  }
  return "unknown";
}

namespace {

Rational validate_product(const ControlFunction& phi, std::size_t n) {
  const auto* p = phi.as_product();
  if (p == nullptr) throw DomainError("hyperstability needs a product-type control function");
  if (p->exponents.size() != 2 * n) {
    throw DomainError("product control has " + std::to_string(p->exponents.size()) + " exponents, expected 2n = " +
                      std::to_string(2 * n));
  }
  Rational total(0);
  for (const auto& e : p->exponents) {
    if (e <= 0) throw DomainError("product control exponents must be positive");
    total += e;
  }
  if (total == 3 * static_cast<long>(n)) {
    throw UnsupportedExponentError("sum of p_ij = 3n = " + std::to_string(3 * n) +
                                   " is the excluded critical exponent");
  }
  return total;
}

}  // namespace

template <Scalar S>
HyperstabilityReport<S> hyperstability_check(const Mapping<S>& f, const ControlFunction& phi,
                                             const std::vector<EquationSample<S>>& samples, const Tolerances& tol,
                                             Exec exec) {
  validate_product(phi, f.shape().vars);
  HyperstabilityReport<S> out;
  out.hypothesis = check_hypothesis(f, phi, samples, tol, exec);
  if (!out.hypothesis.holds) {
    out.outcome = HyperOutcome::hypothesis_violated;
    return out;
  }
  out.classification = classify(f, samples, tol, exec);
  out.outcome = out.classification->verdict == Verdict::multicubic_on_grid ? HyperOutcome::multicubic_on_grid
                                                                           : HyperOutcome::hyperstability_counterexample;
  return out;
}

namespace {

template <Scalar S>
std::optional<Vec<S>> fit_leading_coefficient(const std::vector<PointRow<S>>& rows, const Shape& shape) {
  if (shape.var_dim != 1 || rows.empty()) return std::nullopt;
  Vec<S> num(shape.codim, S(0));
  S den(0);
  for (const auto& row : rows) {
    if (row.saturated) continue;
    S m(1);
    for (const S& v : row.x) m *= v * v * v;
    den += m * m;
    for (std::size_t c = 0; c < shape.codim; ++c) num[c] += row.c[c] * m;
  }
  if (sgn(den) == 0) return std::nullopt;
  for (auto& v : num) v /= den;
  return num;
}

}  // namespace

template <Scalar S>
StabilizationReport<S> stabilize(const Mapping<S>& f, const ControlFunction& phi,
                                 const StabilizationConfig<S>& cfg) {
  if (cfg.iterations < 1) throw DomainError("stabilize needs at least one iteration");
  if (cfg.grid.empty()) throw DomainError("stabilize needs a non-empty hypothesis grid");
  if constexpr (!is_exact_v<S>) {
    if (!(cfg.tolerance > 0)) throw DomainError("float mode needs a positive convergence tolerance");
  }
  const Shape& shape = f.shape();
  const std::size_t n = shape.vars;
  StabilizationReport<S> out;
  out.iterations = cfg.iterations;

  if (const auto* p = phi.as_product()) {
    const Rational total = validate_product(phi, n);
    out.beta = cfg.beta.value_or(total < 3 * static_cast<long>(n) ? 1 : -1);
    out.hyperstability_pathway = true;
    out.hyper = hyperstability_check(f, phi, cfg.grid, cfg.tol, cfg.exec);
    out.hypothesis = out.hyper->hypothesis;
    (void)p;
  } else {
    if (const auto* p = phi.as_power()) {
      out.beta = cfg.beta.value_or(choose_beta(p->alpha, n));
    } else if (cfg.beta) {
      out.beta = *cfg.beta;
    } else {
      throw DomainError("an empirical control needs an explicit beta");
    }
    out.hypothesis = check_hypothesis(f, phi, cfg.grid, cfg.tol, cfg.exec);
  }
  if (out.beta != 1 && out.beta != -1) throw DomainError("beta must be +1 or -1");

  const bool hyper_ok = out.hyper && out.hyper->outcome == HyperOutcome::multicubic_on_grid;
  out.rows = map_indices<PointRow<S>>(cfg.exec, cfg.points.size(), [&](std::size_t i) {
    PointRow<S> row;
    row.x = cfg.points[i];
    const std::span<const S> x(row.x);
    if (!out.hyperstability_pathway) {
      const PhiSeries<S> series = phi_series(phi, x, n, out.beta, cfg.iterations, shape.var_dim);
      if (series.diverged) {
        throw DivergenceError("summability hypothesis violated: the series defining Phi diverges at x = (" +
                              format_scalar(row.x.front()) + ", ...) for beta = " + std::to_string(out.beta));
      }
      row.phi_series = series.value();
      if (const auto* p = phi.as_power(); p != nullptr && p->alpha > 0) {
        row.phi_closed = phi_closed_form<S>(x, p->delta, p->alpha, n, BoundVariant::closed, shape.var_dim);
      }
    }
    Vec<S> previous = f(x);
    row.f = previous;
    for (std::size_t l = 1; l <= cfg.iterations; ++l) {
      Vec<S> current = apply_t_pow(f, out.beta, l, x);
      if (!all_finite(current)) {
        row.saturated = true;
        break;
      }
      row.trace.push_back(norm_max<S>(vec_sub(current, previous)));
      previous = std::move(current);
    }
    row.c = previous;
    row.error = norm_max<S>(vec_sub(row.f, row.c));
    row.converged = !row.saturated && !row.trace.empty() && to_double(row.trace.back()) <= cfg.tolerance;
    if (out.hyperstability_pathway) {
      row.bound_ok = hyper_ok && !row.saturated;
    } else if constexpr (is_exact_v<S>) {
      row.bound_ok = !(row.phi_series < row.error);
    } else {
      const double slack = 4 * std::numeric_limits<double>::epsilon() *
                           std::max(norm_max<S>(row.f), norm_max<S>(row.c));
      row.bound_ok = !row.saturated && row.error <= row.phi_series + slack;
    }
    return row;
  });

  for (const auto& row : out.rows) {
    out.bound_satisfied = out.bound_satisfied && row.bound_ok;
    out.converged = out.converged && row.converged;
  }
  out.leading_coefficient = fit_leading_coefficient(out.rows, shape);
  return out;
}

template <Scalar S>
UniquenessReport<S> uniqueness_check(const Mapping<S>& f1, const Mapping<S>& f2, const ControlFunction& phi,
                                     const StabilizationConfig<S>& cfg) {
  UniquenessReport<S> out{S(0), std::nullopt, stabilize(f1, phi, cfg), stabilize(f2, phi, cfg)};
  for (std::size_t i = 0; i < out.first.rows.size(); ++i) {
    const S gap = norm_max<S>(vec_sub(out.first.rows[i].c, out.second.rows[i].c));
    if (!out.at || out.max_disagreement < gap) {
      out.max_disagreement = gap;
      out.at = out.first.rows[i].x;
    }
  }
  return out;
}

#define MULTICUBIC_INSTANTIATE(S)                                                                                  \
  template OperatorDescriptor<S> rescaling_operator<S>(std::size_t, int);                                          \
  template IterationResult<S> iterate_operator(const OperatorDescriptor<S>&, const Mapping<S>&,                    \
                                               const std::function<S(std::span<const S>)>&, std::span<const S>,   \
                                               std::size_t, double);                                               \
  template Vec<S> apply_t_pow(const Mapping<S>&, int, std::size_t, std::span<const S>);                            \
  template Mapping<S> t_pow_mapping(const Mapping<S>&, int, std::size_t);                                          \
  template Vec<S> contraction_residual(const Mapping<S>&, std::span<const S>);                                     \
  template PhiSeries<S> phi_series(const ControlFunction&, std::span<const S>, std::size_t, int, std::size_t,      \
                                   std::size_t);                                                                   \
  template S phi_closed_form(std::span<const S>, const Rational&, const Rational&, std::size_t, BoundVariant,      \
                             std::size_t);                                                                         \
  template HypothesisCheck<S> check_hypothesis(const Mapping<S>&, const ControlFunction&,                          \
                                               const std::vector<EquationSample<S>>&, const Tolerances&, Exec);    \
  template FitDelta<S> fit_delta(const Mapping<S>&, const Rational&, const std::vector<EquationSample<S>>&,         \
                                 const Tolerances&, Exec);                                                         \
  template DecayCheck<S> dpow_decay_check(const Mapping<S>&, const ControlFunction&, int,                          \
                                          const std::vector<EquationSample<S>>&, std::size_t, const Tolerances&,   \
                                          Exec);                                                                   \
  template HyperstabilityReport<S> hyperstability_check(const Mapping<S>&, const ControlFunction&,                 \
                                                        const std::vector<EquationSample<S>>&, const Tolerances&,  \
                                                        Exec);                                                     \
  template StabilizationReport<S> stabilize(const Mapping<S>&, const ControlFunction&,                             \
                                            const StabilizationConfig<S>&);                                        \
  template UniquenessReport<S> uniqueness_check(const Mapping<S>&, const Mapping<S>&, const ControlFunction&,      \
                                                const StabilizationConfig<S>&);

MULTICUBIC_INSTANTIATE(Rational)
MULTICUBIC_INSTANTIATE(double)

#undef MULTICUBIC_INSTANTIATE

}  // namespace multicubic
