#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multicubic/control.hpp"
#include "multicubic/equation.hpp"
#include "multicubic/mappings.hpp"

namespace multicubic {

// ---------------------------------------------------------------------------
// Generic contraction engine.
//
// T lambda(x) = sum_i c_i(x) lambda(g_i(x)) and its majorant
// Lambda delta(x) = sum_i |c_i(x)| delta(g_i(x)). If ||T phi0 - phi0|| <= theta
// and theta* = sum_l Lambda^l theta is finite, T^l phi0 converges to the
// unique fixed point psi with ||phi0 - psi|| <= theta*.

template <Scalar S>
struct OperatorTerm {
  std::function<Point<S>(std::span<const S>)> transform;  // g_i
  std::function<S(std::span<const S>)> coefficient;       // c_i, with L_i = |c_i|
};

template <Scalar S>
struct OperatorDescriptor {
  std::vector<OperatorTerm<S>> terms;
};

/// The single-term operator T xi(x) = 2^{-3n beta} xi(2^beta x).
template <Scalar S>
OperatorDescriptor<S> rescaling_operator(std::size_t n, int beta);

template <Scalar S>
struct IterationResult {
  std::optional<Vec<S>> estimate;  // T^L phi0(x); empty when diverged
  S theta_star{0};                 // sum_{l=0}^{L} Lambda^l theta(x)
  std::vector<S> theta_terms;      // Lambda^l theta(x), l = 0..L
  std::vector<S> increments;       // ||T^l phi0(x) - T^{l-1} phi0(x)||, l = 1..L
  bool converged = false;
  bool diverged = false;
};

/// Divergence is declared when the last majorant term is positive and no
/// smaller than the term halfway through the run.
template <Scalar S>
IterationResult<S> iterate_operator(const OperatorDescriptor<S>& op, const Mapping<S>& phi0,
                                    const std::function<S(std::span<const S>)>& theta, std::span<const S> x,
                                    std::size_t iterations, double tolerance = 1e-9);

// ---------------------------------------------------------------------------
// Multi-cubic stabilizer.

/// +1 when alpha < 3n, -1 when alpha > 3n. Throws UnsupportedExponentError at alpha = 3n.
int choose_beta(const Rational& alpha, std::size_t n);

/// 2^{-3n beta l} f(2^{beta l} x).
template <Scalar S>
Vec<S> apply_t_pow(const Mapping<S>& f, int beta, std::size_t l, std::span<const S> x);

/// The mapping T^l f.
template <Scalar S>
Mapping<S> t_pow_mapping(const Mapping<S>& f, int beta, std::size_t l);

/// f(2x) - 2^{3n} f(x).
template <Scalar S>
Vec<S> contraction_residual(const Mapping<S>& f, std::span<const S> x);

template <Scalar S>
struct PhiSeries {
  S partial{0};          // terms l = 0..L
  std::optional<S> tail;  // exact geometric remainder, power controls only
  bool diverged = false;
  std::optional<S> ratio;  // term ratio, power controls only

  S value() const { return tail ? S(partial + *tail) : partial; }
};

/// Phi(x) = 2^{-(3n(beta+1)/2 + n)} sum_{l>=0} 2^{-3n beta l} phi(2^{beta l + (beta-1)/2} x, 0),
/// truncated after l = L.
template <Scalar S>
PhiSeries<S> phi_series(const ControlFunction& phi, std::span<const S> x, std::size_t n, int beta,
                        std::size_t iterations, std::size_t var_dim = 1);

enum class BoundVariant { closed, series };

std::string to_string(BoundVariant variant);

/// Closed-form bound for a power control.
///   alpha < 3n: delta / (2^{4n} - 2^{alpha+n}) * sum_j ||x_j||^alpha   (both variants)
///   alpha > 3n: closed  2^alpha delta / (2^{alpha+n} - 2^{4n}) * sum_j ||x_j||^alpha
///               series        delta / (2^{alpha+n} - 2^{4n}) * sum_j ||x_j||^alpha
/// The closed constant is the one commonly stated for this range; the series
/// variant is what the defining series actually sums to, and is never larger.
/// Throws UnsupportedExponentError at alpha = 3n and DomainError for alpha <= 0.
template <Scalar S>
S phi_closed_form(std::span<const S> x, const Rational& delta, const Rational& alpha, std::size_t n,
                  BoundVariant variant, std::size_t var_dim = 1);

/// Grid check of ||D f|| <= phi. Samples where phi is singular are skipped.
template <Scalar S>
struct HypothesisCheck {
  bool holds = true;
  std::size_t samples = 0;
  std::size_t singular = 0;
  std::optional<EquationSample<S>> witness;  // worst violating sample
  Extended<S> worst_ratio;                   // max ||D f|| / phi over the grid
  S residual_at_witness{0};
  S phi_at_witness{0};
};

template <Scalar S>
HypothesisCheck<S> check_hypothesis(const Mapping<S>& f, const ControlFunction& phi,
                                    const std::vector<EquationSample<S>>& samples, const Tolerances& tol = {},
                                    Exec exec = Exec::parallel);

template <Scalar S>
struct FitDelta {
  Extended<S> delta;  // max ||D f|| / sum ||x_ij||^alpha
  bool admissible = true;
  std::optional<EquationSample<S>> worst;
  std::size_t skipped = 0;   // 0/0 samples
  std::size_t singular = 0;  // ||0||^alpha undefined
};

/// Smallest delta making the power control admissible on the grid. A sample
/// with a vanishing denominator and a nonzero residual makes it infinite.
template <Scalar S>
FitDelta<S> fit_delta(const Mapping<S>& f, const Rational& alpha, const std::vector<EquationSample<S>>& samples,
                      const Tolerances& tol = {}, Exec exec = Exec::parallel);

template <Scalar S>
struct DecayCheck {
  bool holds = true;
  bool hypothesis_held = true;  // ||D f|| <= phi on the scaled grid
  std::size_t checks = 0;
  Extended<S> worst_ratio;
  std::size_t worst_level = 0;
  std::optional<EquationSample<S>> worst_sample;
  std::optional<EquationSample<S>> hypothesis_witness;  // scaled sample
};

/// ||D(T^l f)(x1, x2)|| <= 2^{-3n beta l} phi(2^{beta l} x1, 2^{beta l} x2) for l = 0..max_level,
/// with D(T^l f) evaluated through T^l f itself.
template <Scalar S>
DecayCheck<S> dpow_decay_check(const Mapping<S>& f, const ControlFunction& phi, int beta,
                               const std::vector<EquationSample<S>>& samples, std::size_t max_level,
                               const Tolerances& tol = {}, Exec exec = Exec::parallel);

enum class HyperOutcome { hypothesis_violated, multicubic_on_grid, hyperstability_counterexample };

std::string to_string(HyperOutcome outcome);

template <Scalar S>
struct HyperstabilityReport {
  HyperOutcome outcome = HyperOutcome::multicubic_on_grid;
  HypothesisCheck<S> hypothesis;
  std::optional<Classification<S>> classification;
};

/// Product-control hyperstability: an f within phi of the equation must be an
/// exact solution. Throws UnsupportedExponentError when sum p_ij = 3n and
/// DomainError unless phi is a product control with positive exponents.
template <Scalar S>
HyperstabilityReport<S> hyperstability_check(const Mapping<S>& f, const ControlFunction& phi,
                                             const std::vector<EquationSample<S>>& samples,
                                             const Tolerances& tol = {}, Exec exec = Exec::parallel);

template <Scalar S>
struct StabilizationConfig {
  std::optional<int> beta;  // derived from alpha when empty
  std::size_t iterations = 40;
  double tolerance = 1e-9;  // on successive iterates
  std::vector<Point<S>> points;
  std::vector<EquationSample<S>> grid;  // hypothesis check
  Tolerances tol;
  Exec exec = Exec::parallel;
};

template <Scalar S>
struct PointRow {
  Point<S> x;
  Vec<S> f;
  Vec<S> c;
  S phi_series{0};
  std::optional<S> phi_closed;
  S error{0};
  bool bound_ok = false;
  bool converged = false;
  bool saturated = false;
  std::vector<S> trace;  // successive-iterate differences
};

template <Scalar S>
struct StabilizationReport {
  int beta = 1;
  std::size_t iterations = 0;
  std::vector<PointRow<S>> rows;
  HypothesisCheck<S> hypothesis;
  bool hyperstability_pathway = false;
  std::optional<HyperstabilityReport<S>> hyper;
  std::optional<Vec<S>> leading_coefficient;  // least-squares fit of C against prod x_j^3
  bool bound_satisfied = true;
  bool converged = true;
};

/// C(x) = T^L f(x) at every evaluation point, compared with Phi(x).
/// Throws DivergenceError when Phi does not converge for the chosen beta.
template <Scalar S>
StabilizationReport<S> stabilize(const Mapping<S>& f, const ControlFunction& phi, const StabilizationConfig<S>& cfg);

template <Scalar S>
struct UniquenessReport {
  S max_disagreement{0};
  std::optional<Point<S>> at;
  StabilizationReport<S> first;
  StabilizationReport<S> second;
};

template <Scalar S>
UniquenessReport<S> uniqueness_check(const Mapping<S>& f1, const Mapping<S>& f2, const ControlFunction& phi,
                                     const StabilizationConfig<S>& cfg);

}  // namespace multicubic
