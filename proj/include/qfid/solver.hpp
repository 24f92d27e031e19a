#pragma once

// External SMT-LIB2 solver driven as a subprocess, one process per query.

#include <map>
#include <optional>
#include <string>

namespace qfid {

struct SolverConfig {
  /// Run through /bin/sh -c; the script arrives on stdin.
  std::string command = "z3 -in";
  double timeout_seconds = 120;
  /// Append (get-model) so that sat answers carry an assignment.
  bool request_model = true;
};

enum class SolverAnswer { Sat, Unsat, Unknown };

const char* to_string(SolverAnswer a);

struct SolverResult {
  SolverAnswer answer = SolverAnswer::Unknown;
  bool timed_out = false;
  double seconds = 0;
  std::string output;
  /// Real-valued assignment parsed from the model, when one was printed and
  /// every value could be evaluated.
  std::optional<std::map<std::string, double>> model;
};

/// Runs one query. Timeouts come back as Unknown with timed_out set. Throws
/// SolverError when the process cannot be started or answers something other
/// than sat / unsat / unknown.
SolverResult run_solver(const std::string& script, const SolverConfig& cfg);

/// Extracts `(define-fun x () Real v)` entries. Values may be decimals,
/// rationals, negations, sums/products thereof, or `(root-obj p k)`.
/// Returns nothing if any real-valued entry cannot be evaluated.
std::optional<std::map<std::string, double>> parse_model_values(const std::string& text);

}  // namespace qfid
