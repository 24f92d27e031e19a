#pragma once

// Model-level driver: basic satisfaction sets, SOVM synthesis per (state, path
// formula) and fidelity decisions, memoised in memory and optionally on disk.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfid/checker.hpp"
#include "qfid/fidelity.hpp"

namespace qfid {

struct EngineOptions {
  FidelityConfig fidelity;
  /// Directory for synthesised SOVM matrices, keyed by model hash, path formula and state.
  std::optional<std::string> cache_dir;
};

struct FidelityRecord {
  std::size_t state = 0;
  std::string formula;
  Verdict verdict;
};

struct EngineStats {
  std::size_t syntheses = 0;
  std::size_t disk_hits = 0;
  std::size_t memo_hits = 0;
};

class Engine {
 public:
  explicit Engine(QmcModel m, EngineOptions opts = {});

  const QmcModel& model() const { return m_; }
  const std::string& hash() const { return hash_; }
  const EngineOptions& options() const { return opts_; }

  /// Satisfaction set; fidelity subformulas are decided per state.
  SatSet check(const StateFormula& f);
  /// Truth of f at one state; only the fidelity subformulas reached from s are decided.
  Truth holds(std::size_t s, const StateFormula& f);
  /// s |= F~tau [phi].
  Verdict decide(std::size_t s, const StateFormula& fq);
  /// S2M(Delta(phi)) at s. Throws SolverError if an operand's satisfaction set is undecided.
  Mat sovm(std::size_t s, const PathFormula& p);
  FidelityBracket bound(std::size_t s, const PathFormula& p, const Rational& precision);

  struct Synthesized {
    std::size_t state;
    std::string path;
    Mat matrix;
  };
  /// Every SOVM matrix computed or loaded so far, ordered by (state, path text).
  std::vector<Synthesized> synthesized() const;

  /// Fidelity decisions made so far, in order.
  std::vector<FidelityRecord> records() const;
  EngineStats stats() const;

 private:
  std::optional<Mat> load_cached(const std::string& key, const std::string& path_text, std::size_t s) const;
  void store_cached(const std::string& key, const std::string& path_text, std::size_t s, const Mat& m) const;
  std::vector<bool> members(const StateFormula& f);

  QmcModel m_;
  EngineOptions opts_;
  std::string hash_;
  mutable std::recursive_mutex mu_;
  std::map<std::pair<std::size_t, std::string>, Verdict> verdicts_;
  std::map<std::pair<std::size_t, std::string>, Mat> sovms_;
  std::map<std::string, UntilMatrices> until_;
  std::vector<FidelityRecord> records_;
  EngineStats stats_;
};

/// Stand-alone decision of s |= F~tau [phi] on a model.
Verdict decide(const QmcModel& m, std::size_t s, const StateFormula& fq, const FidelityConfig& cfg = {});
FidelityBracket min_fidelity_bracket(const QmcModel& m, std::size_t s, const PathFormula& p,
                                     const Rational& precision, const FidelityConfig& cfg = {});

/// Text form of a matrix used by the disk cache: `rows cols` then one scalar per line.
std::string serialize_matrix(const Mat& m);
Mat deserialize_matrix(const std::string& text, const FieldPtr& field);

}  // namespace qfid
