#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qfid {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `p`, `p/q`, `-p/q` or a decimal literal such as `0.6703` exactly.
Rational parse_rational(std::string_view text);

/// Canonical text: `p` or `p/q`, negative sign in front.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

Rational floor_rational(const Rational& q);

/// Nearest double (used only outside the exact core).
double to_double(const Rational& q);

}  // namespace qfid
