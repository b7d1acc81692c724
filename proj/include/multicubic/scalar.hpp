#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace multicubic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact runs use Rational throughout, float runs use double. Never mixed.
enum class Mode { exact, floating };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <Scalar S>
inline constexpr Mode mode_of_v = is_exact_v<S> ? Mode::exact : Mode::floating;

template <Scalar S>
using Vec = std::vector<S>;

/// Flat coordinates of a point of V^n; variable j occupies [j*d, (j+1)*d).
template <Scalar S>
using Point = std::vector<S>;

/// Parses "p/q" or "p" (optional leading '-'); the result is canonical.
Rational parse_rational(std::string_view text);
/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);
/// Shortest round-trip decimal representation.
std::string format_double(double value);

bool is_integer(const Rational& value);

template <Scalar S>
S from_rational(const Rational& value) {
  if constexpr (is_exact_v<S>) {
    return value;
  } else {
    return value.get_d();
  }
}

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

inline Rational abs_value(const Rational& value) { return abs(value); }
inline double abs_value(double value) { return std::fabs(value); }

/// Sign of a double, matching gmpxx's sgn for rationals.
inline int sgn(double value) { return (value > 0) - (value < 0); }
using ::sgn;

inline std::string format_scalar(const Rational& value) { return format_rational(value); }
inline std::string format_scalar(double value) { return format_double(value); }

/// 2^e for any integer e; exact in both modes.
template <Scalar S>
S pow2(long exponent) {
  if constexpr (is_exact_v<S>) {
    Rational out(1);
    if (exponent >= 0) {
      mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(exponent));
    } else {
      mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-exponent));
    }
    return out;
  } else {
    return std::ldexp(1.0, static_cast<int>(exponent));
  }
}

template <Scalar S>
S ipow(const S& base, unsigned exponent) {
  S out(1);
  S b = base;
  while (exponent != 0) {
    if (exponent & 1U) out *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return out;
}

/// |base|^exponent for a non-negative base. Exact mode needs an integer
/// exponent. 0^0 is 1 and 0^e with e < 0 throws SingularityError.
template <Scalar S>
S pow_abs(const S& base, const Rational& exponent);
template <>
Rational pow_abs<Rational>(const Rational& base, const Rational& exponent);
template <>
double pow_abs<double>(const double& base, const Rational& exponent);

/// Componentwise maximum norm.
template <Scalar S>
S norm_max(std::span<const S> values) {
  S out(0);
  for (const S& v : values) {
    S a = abs_value(v);
    if (out < a) out = a;
  }
  return out;
}

template <Scalar S>
Vec<S> convert_vec(std::span<const Rational> values) {
  Vec<S> out;
  out.reserve(values.size());
  for (const Rational& v : values) out.push_back(from_rational<S>(v));
  return out;
}

/// Exact rational value of a finite double.
Rational rational_from_double(double value);

}  // namespace multicubic

namespace multicubic {

/// A non-negative quantity that may be +infinity (c/0 ratios, unbounded deltas).
template <Scalar S>
struct Extended {
  S value{0};
  bool infinite = false;

  static Extended inf() { return Extended{S(0), true}; }

  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  std::string str() const { return infinite ? std::string("inf") : format_scalar(value); }
};

}  // namespace multicubic
