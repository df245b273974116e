#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cbd {

/// Exact probability value. gmp keeps numerator/denominator reduced with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;

/// n/d in lowest terms. mpq_class(n, d) does not reduce, and comparisons on
/// unreduced values are wrong.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "3", "7/10", "-1/2", "0.25", ".5", "1e-3" exactly (decimals by place
/// value). Throws Error{ParseError}.
Rational parse_rational(std::string_view text);

/// Canonical reduced form: "0", "1", "7/10", "-1/2".
std::string to_string(const Rational& value);

inline bool is_probability(const Rational& value) { return value >= 0 && value <= 1; }

}  // namespace cbd
