#include "sbp/rational.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "sbp/errors.hpp"

namespace sbp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

mpz_class pow10(long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_token(num) || !all_digits(den))
    throw UsageError("malformed rational: '" + std::string(text) + "'");
  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  Rational out{mpz_class(num_str, 10), mpz_class(std::string(den), 10)};
  if (out.get_den() == 0) throw UsageError("zero denominator: '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

Rational parse_number(std::string_view text) {
  if (text.find('/') != std::string_view::npos || is_integer_token(text)) return parse_rational(text);
  // Exact decimal: [sign] digits [. digits] [(e|E) [sign] digits]
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  const auto epos = rest.find_first_of("eE");
  const std::string_view mantissa = rest.substr(0, epos);
  long exponent = 0;
  if (epos != std::string_view::npos) {
    const std::string exp_text(rest.substr(epos + 1));
    if (!is_integer_token(exp_text) || exp_text.size() > 6)
      throw UsageError("malformed number: '" + std::string(text) + "'");
    exponent = std::strtol(exp_text.c_str(), nullptr, 10);
  }
  const auto dot = mantissa.find('.');
  const std::string_view whole = mantissa.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : mantissa.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (!frac.empty() && !all_digits(frac)))
    throw UsageError("malformed number: '" + std::string(text) + "'");
  Rational out{mpz_class(std::string(whole) + std::string(frac), 10)};
  exponent -= static_cast<long>(frac.size());
  if (exponent >= 0)
    out *= Rational(pow10(exponent));
  else
    out /= Rational(pow10(-exponent));
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::string to_scientific(const Rational& value, int digits) {
  if (digits < 1) throw UsageError("to_scientific needs at least one digit");
  if (value == 0) return "0" + (digits > 1 ? "." + std::string(digits - 1, '0') : "") + "e+00";
  const Rational mag = abs(value);
  // Decimal exponent e with 10^e <= mag < 10^(e+1); sizeinbase gives a guess
  // within one of the answer.
  long e = static_cast<long>(mpz_sizeinbase(mag.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(mag.get_den_mpz_t(), 10));
  auto ten_to = [](long k) {
    return k >= 0 ? Rational(pow10(k)) : Rational(mpz_class(1), pow10(-k));
  };
  while (ten_to(e) > mag) --e;
  while (ten_to(e + 1) <= mag) ++e;
  const long shift = digits - 1 - e;
  const Rational scaled = mag * ten_to(shift);
  // Round half away from zero.
  mpz_class mant = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  if (mant == pow10(digits)) {
    mant = pow10(digits - 1);
    ++e;
  }
  std::string m = mant.get_str();
  std::string out = value < 0 ? "-" : "";
  out += m.substr(0, 1);
  if (digits > 1) out += "." + m.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  return out + buf;
}

double to_double(const Rational& value) {
  // mpq_get_d truncates; strtod on a long decimal expansion rounds to nearest.
  return std::strtod(to_scientific(value, 40).c_str(), nullptr);
}

std::size_t bit_length(const Rational& value) {
  return mpz_sizeinbase(value.get_num_mpz_t(), 2) + mpz_sizeinbase(value.get_den_mpz_t(), 2);
}

Rational ipow(long base, unsigned exponent) {
  mpz_class out;
  mpz_class b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return Rational(out);
}

}  // namespace sbp
