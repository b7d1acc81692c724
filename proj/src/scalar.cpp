#include "multicubic/scalar.hpp"

#include <array>
#include <charconv>
#include <cctype>

#include "multicubic/errors.hpp"

namespace multicubic {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float") return Mode::floating;
  throw ParseError("unknown mode '" + std::string(text) + "' (expected exact|float)");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not a rational literal: '" + std::string(text) + "' (expected \"p/q\" or \"p\")");
  }
  Rational out;
  if (out.set_str(std::string(text), 10) != 0) {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  if (out.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::string format_double(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite double to a rational");
  Rational out(value);
  out.canonicalize();
  return out;
}

template <>
Rational pow_abs<Rational>(const Rational& base, const Rational& exponent) {
  if (!is_integer(exponent)) {
    throw DomainError("exact mode requires integer exponents, got " + format_rational(exponent));
  }
  if (!exponent.get_num().fits_slong_p()) throw DomainError("exponent out of range");
  const long e = exponent.get_num().get_si();
  if (e == 0) return Rational(1);
  if (sgn(base) == 0) {
    if (e < 0) throw SingularityError("||0||^" + format_rational(exponent) + " is undefined");
    return Rational(0);
  }
  Rational magnitude = abs(base);
  Rational out;
  if (e > 0) {
    mpz_pow_ui(out.get_num_mpz_t(), magnitude.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), magnitude.get_den_mpz_t(), static_cast<unsigned long>(e));
  } else {
    mpz_pow_ui(out.get_num_mpz_t(), magnitude.get_den_mpz_t(), static_cast<unsigned long>(-e));
    mpz_pow_ui(out.get_den_mpz_t(), magnitude.get_num_mpz_t(), static_cast<unsigned long>(-e));
  }
  out.canonicalize();
  return out;
}

template <>
double pow_abs<double>(const double& base, const Rational& exponent) {
  const double e = exponent.get_d();
  if (sgn(exponent) == 0) return 1.0;
  const double magnitude = std::fabs(base);
  if (magnitude == 0.0) {
    if (e < 0) throw SingularityError("||0||^" + format_rational(exponent) + " is undefined");
    return 0.0;
  }
  if (is_integer(exponent) && exponent.get_num().fits_sint_p()) {
    const int k = static_cast<int>(exponent.get_num().get_si());
    return k >= 0 ? ipow(magnitude, static_cast<unsigned>(k)) : 1.0 / ipow(magnitude, static_cast<unsigned>(-k));
  }
  return std::pow(magnitude, e);
}

}  // namespace multicubic
