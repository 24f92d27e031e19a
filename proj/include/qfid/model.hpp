#pragma once

// Quantum Markov chains: states, labels and the transition super-operator
// matrix Q, plus the text format.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfid/superop.hpp"

namespace qfid {

struct QmcModel {
  FieldPtr field;  // null means Q
  std::size_t d = 0;
  std::vector<std::string> states;
  std::vector<std::set<std::string>> labels;  // indexed like states
  std::map<std::pair<std::size_t, std::size_t>, SuperOp> q;

  std::size_t n() const { return states.size(); }
  /// Throws ValidationError for an unknown name.
  std::size_t index_of(std::string_view state) const;
  bool has_transition(std::size_t s, std::size_t t) const;
  /// Q(s,t); the zero super-operator when absent.
  SuperOp transition(std::size_t s, std::size_t t) const;
  bool has_label(std::size_t s, const std::string& ap) const { return labels.at(s).count(ap) > 0; }
};

struct CompletenessViolation {
  std::size_t state;
  Mat residual;  // sum E^dagger E - I
};

struct ValidationReport {
  std::vector<CompletenessViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string(const QmcModel& m) const;
};

/// Exact completeness check sum_t sum_l E^dagger E = I for every state.
ValidationReport validate(const QmcModel& m);

struct ParseOptions {
  bool validate = true;
};

/// Parses the model format; throws ParseError on syntax errors and
/// ValidationError on unknown names, shape errors or (if requested) incompleteness.
QmcModel parse_model(std::string_view text, const ParseOptions& opts = {});
QmcModel load_model(const std::string& path, const ParseOptions& opts = {});
std::string print_model(const QmcModel& m);
/// Hex SHA-256 of print_model(m).
std::string model_hash(const QmcModel& m);
std::string sha256_hex(std::string_view text);

/// F = sum_{s,t} {|t><s|} (x) Q(s,t) on C^n (x) C^d.
SuperOp combined_F(const QmcModel& m);

/// Delta of the cylinder of a finite path (state indices); identity for a
/// single state. Throws ValidationError on a missing transition.
SuperOp cylinder_measure(const QmcModel& m, const std::vector<std::size_t>& path);

/// sum_s |s><s| (x) rho_s.
Mat cq_state(const std::vector<Mat>& blocks);
/// The s-th diagonal d x d block of a classical-quantum operator.
Mat cq_block(const Mat& g, std::size_t d, std::size_t s);

}  // namespace qfid
