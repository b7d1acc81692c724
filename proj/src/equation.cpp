#include "multicubic/equation.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "multicubic/errors.hpp"

namespace multicubic {

EquationPlan::EquationPlan(std::size_t n) : n_(n), signs_(enumerate_sign_patterns(n)) {
  for (std::size_t k = 0; k <= n; ++k) {
    groups_.push_back(Group{k, rhs_weight(n, static_cast<long>(k)), enumerate_mk(n, static_cast<long>(k))});
  }
}

const EquationPlan& plan_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const EquationPlan>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const EquationPlan>(n);
  return *slot;
}

namespace {

template <Scalar S>
void check_sample(const Shape& shape, const EquationSample<S>& s) {
  if (s.x1.size() != shape.point_size() || s.x2.size() != shape.point_size()) {
    throw DomainError("arity mismatch: sample points have " + std::to_string(s.x1.size()) + " and " +
                      std::to_string(s.x2.size()) + " coordinates, mapping expects " +
                      std::to_string(shape.point_size()));
  }
}

template <Scalar S>
void accumulate(Vec<S>& acc, const Vec<S>& value, const S& weight, S& scale) {
  for (std::size_t c = 0; c < acc.size(); ++c) {
    S term = weight * value[c];
    S mag = abs_value(term);
    if (scale < mag) scale = mag;
    acc[c] += term;
  }
}

template <Scalar S>
Vec<S> lhs_impl(const Mapping<S>& f, const EquationSample<S>& s, S& scale) {
  const Shape& shape = f.shape();
  const EquationPlan& plan = plan_for(shape.vars);
  Vec<S> out(shape.codim, S(0));
  Point<S> y(shape.point_size());
  const S one(1);
  for (const auto& q : plan.sign_patterns()) {
    for (std::size_t j = 0; j < shape.vars; ++j) {
      for (std::size_t d = 0; d < shape.var_dim; ++d) {
        const std::size_t i = j * shape.var_dim + d;
        y[i] = 2 * s.x1[i];
        if (q.signs[j] > 0) {
          y[i] += s.x2[i];
        } else {
          y[i] -= s.x2[i];
        }
      }
    }
    accumulate(out, f(y), one, scale);
  }
  return out;
}

template <Scalar S>
Vec<S> rhs_impl(const Mapping<S>& f, const EquationSample<S>& s, S& scale) {
  const Shape& shape = f.shape();
  const EquationPlan& plan = plan_for(shape.vars);
  Vec<S> out(shape.codim, S(0));
  for (const auto& group : plan.groups()) {
    const S weight = from_rational<S>(Rational(group.weight));
    for (const auto& term : group.terms) {
      accumulate(out, f(instantiate(term, s, shape.var_dim)), weight, scale);
    }
  }
  return out;
}

}  // namespace

template <Scalar S>
Point<S> instantiate(const MkTerm& term, const EquationSample<S>& s, std::size_t var_dim) {
  Point<S> out(s.x1.size());
  for (std::size_t j = 0; j < term.choices.size(); ++j) {
    for (std::size_t d = 0; d < var_dim; ++d) {
      const std::size_t i = j * var_dim + d;
      switch (term.choices[j]) {
        case NodeChoice::First:
          out[i] = s.x1[i];
          break;
        case NodeChoice::PlusDiff:
          out[i] = s.x1[i] + s.x2[i];
          break;
        case NodeChoice::MinusDiff:
          out[i] = s.x1[i] - s.x2[i];
          break;
      }
    }
  }
  return out;
}

template <Scalar S>
Vec<S> lhs_sum(const Mapping<S>& f, const EquationSample<S>& s) {
  check_sample(f.shape(), s);
  S scale(0);
  return lhs_impl(f, s, scale);
}

template <Scalar S>
Vec<S> rhs_sum(const Mapping<S>& f, const EquationSample<S>& s) {
  check_sample(f.shape(), s);
  S scale(0);
  return rhs_impl(f, s, scale);
}

template <Scalar S>
DiffEvaluation<S> evaluate_diff(const Mapping<S>& f, const EquationSample<S>& s) {
  check_sample(f.shape(), s);
  DiffEvaluation<S> out;
  out.residual = lhs_impl(f, s, out.scale);
  const Vec<S> rhs = rhs_impl(f, s, out.scale);
  for (std::size_t c = 0; c < rhs.size(); ++c) out.residual[c] -= rhs[c];
  return out;
}

template <Scalar S>
Vec<S> diff_operator(const Mapping<S>& f, const EquationSample<S>& s) {
  return evaluate_diff(f, s).residual;
}

template <Scalar S>
bool residual_negligible(std::span<const S> residual, const S& scale, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)scale;
    (void)tol;
    for (const S& v : residual) {
      if (sgn(v) != 0) return false;
    }
    return true;
  } else {
    return norm_max(residual) <= tol * scale;
  }
}

template <Scalar S>
ResidualReport<S> scan_residuals(const Mapping<S>& f, const std::vector<EquationSample<S>>& samples,
                                 const ScanOptions& options) {
  struct Row {
    S norm;
    bool negligible;
  };
  const auto rows = map_indices<Row>(options.exec, samples.size(), [&](std::size_t i) {
    const DiffEvaluation<S> d = evaluate_diff(f, samples[i]);
    return Row{norm_max<S>(d.residual), residual_negligible<S>(d.residual, d.scale, options.tol.equation)};
  });
  ResidualReport<S> report;
  report.samples = samples.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (report.worst_index == npos || report.max_residual < rows[i].norm) {
      report.max_residual = rows[i].norm;
      report.worst_index = i;
    }
    if (!rows[i].negligible && report.first_failure == npos) report.first_failure = i;
    if (options.keep_per_sample) report.per_sample.push_back(rows[i].norm);
  }
  if (report.worst_index != npos) report.worst_sample = samples[report.worst_index];
  report.satisfied = report.first_failure == npos;
  return report;
}

template <Scalar S>
DiffEvaluation<S> evaluate_junkim(const Mapping<S>& f, std::size_t j, std::span<const S> base,
                                  std::span<const S> y) {
  const Shape& shape = f.shape();
  if (j >= shape.vars) {
    throw DomainError("variable index " + std::to_string(j) + " out of range [0, " + std::to_string(shape.vars) +
                      ")");
  }
  if (base.size() != shape.point_size()) {
    throw DomainError("arity mismatch: base point has " + std::to_string(base.size()) + " coordinates, expected " +
                      std::to_string(shape.point_size()));
  }
  if (y.size() != shape.var_dim) {
    throw DomainError("increment y must have " + std::to_string(shape.var_dim) + " coordinates");
  }
  const std::size_t offset = j * shape.var_dim;
  auto with_block = [&](int x_factor, int y_sign) {
    Point<S> p(base.begin(), base.end());
    for (std::size_t d = 0; d < shape.var_dim; ++d) {
      p[offset + d] = x_factor * base[offset + d];
      if (y_sign > 0) p[offset + d] += y[d];
      if (y_sign < 0) p[offset + d] -= y[d];
    }
    return p;
  };
  DiffEvaluation<S> out;
  out.residual.assign(shape.codim, S(0));
  accumulate(out.residual, f(with_block(2, 1)), S(1), out.scale);
  accumulate(out.residual, f(with_block(2, -1)), S(1), out.scale);
  accumulate(out.residual, f(with_block(1, 1)), S(-2), out.scale);
  accumulate(out.residual, f(with_block(1, -1)), S(-2), out.scale);
  accumulate(out.residual, f(with_block(1, 0)), S(-12), out.scale);
  return out;
}

template <Scalar S>
Vec<S> junkim_residual(const Mapping<S>& f, std::size_t j, std::span<const S> base, std::span<const S> y) {
  return evaluate_junkim(f, j, base, y).residual;
}

template <Scalar S>
PowerCheck<S> check_power_condition(const Mapping<S>& f, std::size_t j, int r, const std::vector<Point<S>>& grid,
                                    double tol, Exec exec) {
  const Shape& shape = f.shape();
  if (j >= shape.vars) {
    throw DomainError("variable index " + std::to_string(j) + " out of range [0, " + std::to_string(shape.vars) +
                      ")");
  }
  const S factor = pow2<S>(r);
  struct Row {
    S relative;
    S deviation;
    bool ok;
    Vec<S> doubled;
    Vec<S> scaled;
  };
  auto rows = map_indices<Row>(exec, grid.size(), [&](std::size_t i) {
    const Point<S>& z = grid[i];
    Point<S> z2 = z;
    for (std::size_t d = 0; d < shape.var_dim; ++d) z2[j * shape.var_dim + d] *= 2;
    Row row;
    row.doubled = f(z2);
    row.scaled = f(z);
    for (auto& v : row.scaled) v *= factor;
    Vec<S> diff = row.doubled;
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] -= row.scaled[c];
    row.deviation = norm_max<S>(diff);
    S denom = norm_max<S>(row.doubled);
    const S other = norm_max<S>(row.scaled);
    if (denom < other) denom = other;
    row.relative = sgn(denom) == 0 ? S(0) : S(row.deviation / denom);
    if constexpr (is_exact_v<S>) {
      row.ok = sgn(row.deviation) == 0;
    } else {
      row.ok = row.relative <= tol;
    }
    return row;
  });
  PowerCheck<S> out;
  out.points = grid.size();
  std::size_t worst = npos;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].ok) out.holds = false;
    if (worst == npos || rows[worst].relative < rows[i].relative) worst = i;
  }
  if (worst != npos) {
    out.worst_relative = rows[worst].relative;
    out.worst_deviation = rows[worst].deviation;
    out.worst_point = grid[worst];
    out.doubled = rows[worst].doubled;
    out.scaled = rows[worst].scaled;
  }
  return out;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::multicubic_on_grid:
      return "MultiCubicOnGrid";
    case Verdict::equation_fails:
      return "EquationFails";
    case Verdict::power_condition_fails:
      return "PowerConditionFails";
    case Verdict::junkim_fails:
      return "JunKimFails";
  }
  return "unknown";
}

template <Scalar S>
Classification<S> classify(const Mapping<S>& f, const std::vector<EquationSample<S>>& samples, const Tolerances& tol,
                           Exec exec) {
  if (samples.empty()) throw DomainError("classify needs a non-empty grid");
  const Shape& shape = f.shape();
  Classification<S> out;

  const ResidualReport<S> eq = scan_residuals(f, samples, ScanOptions{tol, false, exec});
  out.samples_checked = eq.samples;
  if (!eq.satisfied) {
    out.verdict = Verdict::equation_fails;
    out.sample = samples[eq.first_failure];
    out.residual = diff_operator(f, samples[eq.first_failure]);
    return out;
  }

  const std::vector<Point<S>> points = grid_points(samples);
  out.points_checked = points.size();
  for (std::size_t j = 0; j < shape.vars; ++j) {
    const PowerCheck<S> pc = check_power_condition(f, j, 3, points, tol.power, exec);
    if (!pc.holds) {
      out.verdict = Verdict::power_condition_fails;
      out.variable = j;
      out.point = pc.worst_point;
      out.residual = pc.doubled;
      for (std::size_t c = 0; c < out.residual.size(); ++c) out.residual[c] -= pc.scaled[c];
      return out;
    }
  }

  const std::size_t total = samples.size() * shape.vars;
  out.junkim_checked = total;
  const auto failure = argmax<long>(exec, total, [&](std::size_t idx) -> std::optional<long> {
    const auto& s = samples[idx / shape.vars];
    const std::size_t j = idx % shape.vars;
    const std::span<const S> y(s.x2.data() + j * shape.var_dim, shape.var_dim);
    const DiffEvaluation<S> r = evaluate_junkim<S>(f, j, s.x1, y);
    if (residual_negligible<S>(r.residual, r.scale, tol.junkim)) return std::nullopt;
    return -static_cast<long>(idx);  // earliest failure wins the max
  });
  if (failure.found()) {
    const std::size_t idx = failure.index;
    const auto& s = samples[idx / shape.vars];
    out.verdict = Verdict::junkim_fails;
    out.sample = s;
    out.variable = idx % shape.vars;
    const std::span<const S> y(s.x2.data() + out.variable * shape.var_dim, shape.var_dim);
    out.residual = junkim_residual<S>(f, out.variable, s.x1, y);
  }
  return out;
}

NormCubeDemo norm_cube_demo(Exec exec) {
  NormCubeDemo demo{make_norm_cube(2, {1.0, 0.0}, NormKind::euclidean), {}, {}, {}, {}, {}, {}, false};
  const Mapping<double> h = demo.h.as_mapping();

  const std::vector<Point<double>> points = grid_points(convert_samples<double>(integer_cross_grid(1, 2, -3, 3)));
  demo.doubling = check_power_condition(h, 0, 3, points, Tolerances{}.power, exec);

  const Point<double> p34{3.0, 4.0};
  const Point<double> p68{6.0, 8.0};
  demo.h_at_34 = h(p34);
  demo.h_at_68 = h(p68);

  const Point<double> origin{0.0, 0.0};
  const Point<double> e1{1.0, 0.0};
  demo.residual_y10 = junkim_residual<double>(h, 0, origin, e1);
  demo.residual_y00 = junkim_residual<double>(h, 0, origin, origin);

  std::vector<EquationSample<double>> samples{{origin, e1}};
  const auto rest = convert_samples<double>(integer_cross_grid(1, 2, -2, 2));
  samples.insert(samples.end(), rest.begin(), rest.end());
  demo.classification = classify(h, samples, Tolerances{}, exec);

  demo.demonstrated = demo.doubling.holds && norm_max<double>(demo.residual_y10) > 0.0;
  return demo;
}

#define MULTICUBIC_INSTANTIATE(S)                                                                                \
  template Point<S> instantiate(const MkTerm&, const EquationSample<S>&, std::size_t);                         \
  template Vec<S> lhs_sum(const Mapping<S>&, const EquationSample<S>&);                                          \
  template Vec<S> rhs_sum(const Mapping<S>&, const EquationSample<S>&);                                          \
  template DiffEvaluation<S> evaluate_diff(const Mapping<S>&, const EquationSample<S>&);                         \
  template Vec<S> diff_operator(const Mapping<S>&, const EquationSample<S>&);                                    \
  template bool residual_negligible(std::span<const S>, const S&, double);                                      \
  template ResidualReport<S> scan_residuals(const Mapping<S>&, const std::vector<EquationSample<S>>&,           \
                                            const ScanOptions&);                                                 \
  template DiffEvaluation<S> evaluate_junkim(const Mapping<S>&, std::size_t, std::span<const S>,                \
                                             std::span<const S>);                                                \
  template Vec<S> junkim_residual(const Mapping<S>&, std::size_t, std::span<const S>, std::span<const S>);      \
  template PowerCheck<S> check_power_condition(const Mapping<S>&, std::size_t, int,                             \
                                               const std::vector<Point<S>>&, double, Exec);                     \
  template Classification<S> classify(const Mapping<S>&, const std::vector<EquationSample<S>>&,                 \
                                      const Tolerances&, Exec);

MULTICUBIC_INSTANTIATE(Rational)
MULTICUBIC_INSTANTIATE(double)

#undef MULTICUBIC_INSTANTIATE

}  // namespace multicubic
