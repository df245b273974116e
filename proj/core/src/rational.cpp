#include "cbd/rational.hpp"

#include <cctype>

#include "cbd/error.hpp"

namespace cbd {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

mpz_class integer(std::string_view digits) { return mpz_class(std::string(digits), 10); }

mpz_class power_of_ten(unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d = integer(den);
    if (d == 0) bad(text);
    value = Rational(integer(num), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string_view whole = mantissa, frac;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      whole = mantissa.substr(0, dot);
      frac = mantissa.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) bad(text);
    if (!whole.empty() && !all_digits(whole)) bad(text);
    if (!frac.empty() && !all_digits(frac)) bad(text);

    mpz_class digits = integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    long scale = exponent - static_cast<long>(frac.size());
    if (scale >= 0) {
      value = Rational(digits * power_of_ten(static_cast<unsigned long>(scale)));
    } else {
      value = Rational(digits, power_of_ten(static_cast<unsigned long>(-scale)));
      value.canonicalize();
    }
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace cbd
