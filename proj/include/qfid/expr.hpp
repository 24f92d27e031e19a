#pragma once

// Exact scalar and polynomial expressions: numbers (p, p/q, decimals), the
// imaginary unit `i`, the primitive element `t`, + - * / ^ and parentheses.

#include <string_view>

#include "qfid/exactnum.hpp"
#include "qfid/lexer.hpp"

namespace qfid {

/// Parses one expression from the lexer and evaluates it in Q(theta)(i).
/// `field` may be null, in which case `t` is rejected.
FieldScalar parse_scalar_expr(Lexer& lex, const FieldPtr& field);

/// Whole-text variant; trailing input is an error.
FieldScalar parse_scalar(std::string_view text, const FieldPtr& field = nullptr);

/// A rational-valued expression (no `i`, no `t`).
Rational parse_rational_expr(Lexer& lex);

/// A polynomial in `var` with rational coefficients, e.g. `z^2-2`.
UPoly parse_upoly_expr(Lexer& lex, std::string_view var);

}  // namespace qfid
