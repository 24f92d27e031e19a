#pragma once

// QCTL state and path formulas. Or, implies and false are rewritten into
// not/and at construction time.

#include <memory>
#include <string>
#include <string_view>

#include "qfid/rational.hpp"

namespace qfid {

enum class Cmp { Lt, Le, Eq, Ge, Gt, Ne };

std::string to_string(Cmp c);

struct StateFormula;
struct PathFormula;
using StatePtr = std::shared_ptr<const StateFormula>;
using PathPtr = std::shared_ptr<const PathFormula>;

struct StateFormula {
  enum class Kind { Atom, True, Not, And, Fidelity };
  Kind kind = Kind::True;
  std::string atom;
  StatePtr lhs;  // Not: operand; And: left
  StatePtr rhs;  // And: right
  Cmp cmp = Cmp::Le;
  Rational tau;
  PathPtr path;
};

struct PathFormula {
  enum class Kind { Next, BoundedUntil, Until };
  Kind kind = Kind::Next;
  StatePtr lhs;  // Next: operand; Until: left
  StatePtr rhs;  // Until: right
  unsigned long bound = 0;
};

StatePtr make_atom(std::string name);
StatePtr make_true();
StatePtr make_false();
/// Collapses double negation.
StatePtr make_not(StatePtr f);
StatePtr make_and(StatePtr a, StatePtr b);
StatePtr make_or(StatePtr a, StatePtr b);
StatePtr make_implies(StatePtr a, StatePtr b);
/// Throws Error if tau is outside [0, 1].
StatePtr make_fidelity(Cmp cmp, Rational tau, PathPtr path);
PathPtr make_next(StatePtr f);
PathPtr make_until(StatePtr a, StatePtr b);
PathPtr make_bounded_until(StatePtr a, StatePtr b, unsigned long k);

bool operator==(const StateFormula& a, const StateFormula& b);
bool operator==(const PathFormula& a, const PathFormula& b);

StatePtr parse_formula(std::string_view text);
PathPtr parse_path_formula(std::string_view text);

/// Text accepted by parse_formula / parse_path_formula.
std::string to_string(const StateFormula& f);
std::string to_string(const PathFormula& f);

}  // namespace qfid
