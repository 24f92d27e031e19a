#pragma once

// Deciding Fid(E) cmp tau for an SOVM matrix M = S2M(E), and bracketing the
// minimum fidelity by bisection on tau.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qfid/checker.hpp"
#include "qfid/numeric_min.hpp"
#include "qfid/polynomial_sentence.hpp"
#include "qfid/solver.hpp"

namespace qfid {

struct FidelityConfig {
  SolverConfig solver;
  EmitOptions emit;
  NumericOptions numeric;
  /// Attach the numeric upper bound to unknown verdicts.
  bool annotate_unknown = true;
};

struct SolverQuery {
  Quantifier quantifier = Quantifier::Exists;
  Rel rel = Rel::Le;
  SolverAnswer answer = SolverAnswer::Unknown;
  bool timed_out = false;
  double seconds = 0;
  std::string error;
};

struct Verdict {
  Truth truth = Truth::Unknown;
  /// Pure state read back from a sat model (informational only).
  std::optional<std::vector<std::complex<double>>> witness;
  /// Comparison polynomial at the witness, in floats.
  std::optional<double> witness_value;
  double solver_seconds = 0;
  std::vector<SolverQuery> queries;
  /// Numeric upper bound on the minimum fidelity, attached to unknown verdicts.
  std::optional<double> numeric_upper;
  std::string note;
};

/// The sentences decide sends: one for < <= >= >, the <= and >= halves for = and !=.
std::vector<PolySentence> fidelity_sentences(const Mat& m, Cmp cmp, const Rational& tau);

/// M must be S2M of a completely positive, trace non-increasing map (every
/// synthesised SOVM of a valid model is). Comparisons that follow from
/// 0 <= Fid <= 1 alone are answered without a solver query.
Verdict decide_sovm(const Mat& m, Cmp cmp, const Rational& tau, const FidelityConfig& cfg);

struct BisectionStep {
  Rational tau;
  Truth truth;
};

/// Fid lies in (lo, hi], or equals lo when lo == hi. `complete` is false when
/// an unknown verdict stopped the search; the interval is then the last sound one.
struct FidelityBracket {
  Rational lo;
  Rational hi{1};
  bool complete = true;
  std::vector<BisectionStep> trace;
  double solver_seconds = 0;
  std::string note;
  /// First solver failure (crash, missing binary, garbage output), as opposed to a timeout or `unknown`.
  std::string solver_error;
};

FidelityBracket min_fidelity_bracket_sovm(const Mat& m, const Rational& precision, const FidelityConfig& cfg);

}  // namespace qfid
