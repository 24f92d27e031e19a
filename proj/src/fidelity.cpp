#include "qfid/fidelity.hpp"

#include <cmath>

#include "qfid/error.hpp"

namespace qfid {

std::vector<PolySentence> fidelity_sentences(const Mat& m, Cmp cmp, const Rational& tau) {
  if (cmp == Cmp::Eq || cmp == Cmp::Ne) return {encode(m, Cmp::Le, tau), encode(m, Cmp::Ge, tau)};
  return {encode(m, cmp, tau)};
}

namespace {

std::optional<std::vector<std::complex<double>>> witness_state(const PolySentence& s,
                                                               const std::map<std::string, double>& model) {
  auto lookup = [&](const std::string& name) -> std::optional<double> {
    if (auto it = model.find(name); it != model.end()) return it->second;
    // Squared variables only fix the magnitude; the sentence is even in them.
    if (auto it = model.find(name + "_p2"); it != model.end()) return std::sqrt(std::max(0.0, it->second));
    return std::nullopt;
  };
  std::vector<std::complex<double>> psi(s.d);
  for (std::size_t a = 0; a < s.d; ++a) {
    auto mu = lookup(s.vars[a]);
    auto nu = lookup(s.vars[s.d + a]);
    // Solvers may omit variables that do not matter; any value works then.
    psi[a] = {mu.value_or(0.0), nu.value_or(0.0)};
  }
  return psi;
}

// p(psi) = <psi|E(psi psi^dagger)|psi> lies in [0, 1] when E is completely
// positive and trace non-increasing, so these comparisons need no solver.
std::optional<Truth> range_decision(const PolySentence& s) {
  const bool exists = s.quantifier == Quantifier::Exists;
  if (s.bound == 0) {
    if (!exists && s.rel == Rel::Ge) return Truth::True;
    if (exists && s.rel == Rel::Lt) return Truth::False;
  }
  if (s.bound == 1) {
    if (exists && s.rel == Rel::Le) return Truth::True;
    if (!exists && s.rel == Rel::Gt) return Truth::False;
  }
  return std::nullopt;
}

Truth run_one(const PolySentence& s, const FidelityConfig& cfg, Verdict& v) {
  if (auto t = range_decision(s)) return *t;
  SolverQuery q;
  q.quantifier = s.quantifier;
  q.rel = s.rel;
  Truth truth = Truth::Unknown;
  try {
    SolverResult r = run_solver(emit_smt(s, cfg.emit), cfg.solver);
    q.answer = r.answer;
    q.timed_out = r.timed_out;
    q.seconds = r.seconds;
    bool exists = s.quantifier == Quantifier::Exists;
    if (r.answer == SolverAnswer::Sat) truth = exists ? Truth::True : Truth::False;
    if (r.answer == SolverAnswer::Unsat) truth = exists ? Truth::False : Truth::True;
    if (r.answer == SolverAnswer::Sat && r.model && !v.witness) {
      v.witness = witness_state(s, *r.model);
      v.witness_value = s.eval_at(*v.witness);
    }
    if (r.timed_out) v.note = "solver timed out";
  } catch (const SolverError& e) {
    q.error = e.what();
    v.note = e.what();
  }
  v.solver_seconds += q.seconds;
  v.queries.push_back(q);
  return truth;
}

}  // namespace

Verdict decide_sovm(const Mat& m, Cmp cmp, const Rational& tau, const FidelityConfig& cfg) {
  Verdict v;
  std::vector<PolySentence> ss = fidelity_sentences(m, cmp, tau);
  if (ss.size() == 1) {
    v.truth = run_one(ss[0], cfg, v);
  } else {
    Truth le = run_one(ss[0], cfg, v);
    Truth eq = le == Truth::False ? Truth::False : truth_and(le, run_one(ss[1], cfg, v));
    v.truth = cmp == Cmp::Eq ? eq : truth_not(eq);
  }
  if (v.truth == Truth::Unknown && cfg.annotate_unknown) v.numeric_upper = numeric_min(m, cfg.numeric).fidelity;
  return v;
}

FidelityBracket min_fidelity_bracket_sovm(const Mat& m, const Rational& precision, const FidelityConfig& cfg) {
  if (sgn(precision) <= 0) throw Error("bracket precision must be positive");
  FidelityBracket b;
  FidelityConfig quiet = cfg;
  quiet.annotate_unknown = false;
  auto query = [&](const Rational& tau) {
    Verdict v = decide_sovm(m, Cmp::Le, tau, quiet);
    b.solver_seconds += v.solver_seconds;
    b.trace.push_back({tau, v.truth});
    for (const auto& q : v.queries)
      if (b.solver_error.empty() && !q.error.empty()) b.solver_error = q.error;
    if (v.truth == Truth::Unknown) {
      b.complete = false;
      b.note = v.note.empty() ? "solver answered unknown at tau = " + tau.get_str() : v.note;
    }
    return v.truth;
  };

  Truth at_zero = query(Rational(0));
  if (at_zero == Truth::True) {
    b.lo = b.hi = 0;
    return b;
  }
  if (at_zero == Truth::Unknown) return b;
  // Fid <= 1 for trace non-increasing measures, so (0, 1] is a sound start.
  while (b.hi - b.lo > precision) {
    Rational mid = (b.lo + b.hi) / 2;
    Truth t = query(mid);
    if (t == Truth::Unknown) break;
    (t == Truth::True ? b.hi : b.lo) = mid;
  }
  return b;
}

}  // namespace qfid
