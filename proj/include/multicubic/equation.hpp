#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multicubic/combinatorics.hpp"
#include "multicubic/grid.hpp"
#include "multicubic/mappings.hpp"
#include "multicubic/parallel.hpp"

namespace multicubic {

/// Sign patterns and weighted node sets of the n-variable equation, built once per n.
class EquationPlan {
 public:
  struct Group {
    std::size_t k;
    Integer weight;  // 2^{n-k} 12^k
    std::vector<MkTerm> terms;
  };

  explicit EquationPlan(std::size_t n);

  std::size_t n() const { return n_; }
  const std::vector<SignPattern>& sign_patterns() const { return signs_; }
  const std::vector<Group>& groups() const { return groups_; }

 private:
  std::size_t n_;
  std::vector<SignPattern> signs_;
  std::vector<Group> groups_;
};

/// Shared, lazily built plan for arity n. Safe to call from worker threads.
const EquationPlan& plan_for(std::size_t n);

/// The point whose variable j is x1_j, x1_j + x2_j or x1_j - x2_j per term.
template <Scalar S>
Point<S> instantiate(const MkTerm& term, const EquationSample<S>& s, std::size_t var_dim);

/// sum over q in {-1,1}^n of f(2 x1 + q x2).
template <Scalar S>
Vec<S> lhs_sum(const Mapping<S>& f, const EquationSample<S>& s);

/// sum_k 2^{n-k} 12^k sum_{N in M_k^n} f(N).
template <Scalar S>
Vec<S> rhs_sum(const Mapping<S>& f, const EquationSample<S>& s);

template <Scalar S>
struct DiffEvaluation {
  Vec<S> residual;
  S scale{0};  // largest weighted summand magnitude seen on either side
};

template <Scalar S>
DiffEvaluation<S> evaluate_diff(const Mapping<S>& f, const EquationSample<S>& s);

/// The difference operator: lhs_sum - rhs_sum.
template <Scalar S>
Vec<S> diff_operator(const Mapping<S>& f, const EquationSample<S>& s);

struct Tolerances {
  double equation = 1e-9;  // relative to the largest summand, float mode only
  double power = 1e-12;    // relative, float mode only
  double junkim = 1e-9;    // relative to the largest summand, float mode only
};

/// Exact mode: residual is exactly zero. Float mode: ||residual|| <= tol * scale.
template <Scalar S>
bool residual_negligible(std::span<const S> residual, const S& scale, double tol);

template <Scalar S>
struct ResidualReport {
  std::size_t samples = 0;
  S max_residual{0};
  std::size_t worst_index = npos;  // first maximizer in grid order
  std::optional<EquationSample<S>> worst_sample;
  std::size_t first_failure = npos;  // first non-negligible sample in grid order
  std::vector<S> per_sample;         // filled on request
  bool satisfied = true;
};

struct ScanOptions {
  Tolerances tol;
  bool keep_per_sample = false;
  Exec exec = Exec::parallel;
};

template <Scalar S>
ResidualReport<S> scan_residuals(const Mapping<S>& f, const std::vector<EquationSample<S>>& samples,
                                 const ScanOptions& options = {});

/// Jun-Kim residual in variable j (0-based), all other variables fixed at base:
///   f(2x+y) + f(2x-y) - 2f(x+y) - 2f(x-y) - 12f(x)  with x = base_j.
template <Scalar S>
Vec<S> junkim_residual(const Mapping<S>& f, std::size_t j, std::span<const S> base, std::span<const S> y);

template <Scalar S>
DiffEvaluation<S> evaluate_junkim(const Mapping<S>& f, std::size_t j, std::span<const S> base,
                                  std::span<const S> y);

template <Scalar S>
struct PowerCheck {
  bool holds = true;
  std::size_t points = 0;
  S worst_relative{0};  // ||f(..2z_j..) - 2^r f(z)|| / max of the two norms
  S worst_deviation{0};
  std::optional<Point<S>> worst_point;
  Vec<S> doubled;  // f(z_1, .., 2 z_j, .., z_n) at worst_point
  Vec<S> scaled;   // 2^r f(z) at worst_point
};

/// r-power condition in variable j (0-based) over the given points.
template <Scalar S>
PowerCheck<S> check_power_condition(const Mapping<S>& f, std::size_t j, int r, const std::vector<Point<S>>& grid,
                                    double tol = Tolerances{}.power, Exec exec = Exec::parallel);

enum class Verdict { multicubic_on_grid, equation_fails, power_condition_fails, junkim_fails };

std::string to_string(Verdict verdict);

template <Scalar S>
struct Classification {
  Verdict verdict = Verdict::multicubic_on_grid;
  std::optional<EquationSample<S>> sample;  // equation_fails / junkim_fails
  std::optional<Point<S>> point;            // power_condition_fails
  std::size_t variable = npos;              // 0-based
  Vec<S> residual;
  std::size_t samples_checked = 0;
  std::size_t points_checked = 0;
  std::size_t junkim_checked = 0;
};

/// Grid-level converse check: the equation on every sample, the 3-power
/// condition in every variable on the grid's points, then the per-variable
/// Jun-Kim equation on the induced (x1, block of x2) pairs.
/// Throws DomainError on an empty grid.
template <Scalar S>
Classification<S> classify(const Mapping<S>& f, const std::vector<EquationSample<S>>& samples,
                           const Tolerances& tol = {}, Exec exec = Exec::parallel);

/// h(2x) = 8h(x) holds, yet the cubic equation fails at x = 0.
struct NormCubeDemo {
  NormCubeMapping h;
  PowerCheck<double> doubling;
  Vec<double> h_at_34;       // h(3, 4)
  Vec<double> h_at_68;       // h(6, 8)
  Vec<double> residual_y10;  // Jun-Kim residual at x = 0, y = (1, 0)
  Vec<double> residual_y00;  // Jun-Kim residual at x = 0, y = 0
  Classification<double> classification;
  bool demonstrated = false;  // doubling holds and residual_y10 != 0
};

NormCubeDemo norm_cube_demo(Exec exec = Exec::parallel);

}  // namespace multicubic
