#pragma once

// Satisfaction sets and exact synthesis of the matrix representation of the
// super-operator valued measure Delta(phi) for next / until path formulas.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qfid/logic.hpp"
#include "qfid/model.hpp"

namespace qfid {

enum class Truth { False, True, Unknown };

Truth truth_not(Truth a);
Truth truth_and(Truth a, Truth b);
const char* to_string(Truth t);

/// Per-state truth of a state formula. Unknown only arises from undecided
/// fidelity subformulas.
struct SatSet {
  std::vector<Truth> truth;

  bool definite() const;
  bool contains(std::size_t s) const { return truth.at(s) == Truth::True; }
  /// Membership vector; throws SolverError when some entry is unknown.
  std::vector<bool> members() const;
};

/// Decides a fidelity subformula at one state.
using FidelityDecider = std::function<Truth(std::size_t state, const StateFormula& fq)>;

SatSet sat(const QmcModel& m, const StateFormula& f, const FidelityDecider& decider);

/// {sum_{s in set} |s><s|} (x) I_d.
Mat guard_projector(const QmcModel& m, const std::vector<bool>& set);
/// F o P_guard.
SuperOp restricted_F(const QmcModel& m, const std::vector<bool>& guard);

struct BsccProjectors {
  Projector gamma;                 // direct sum of the BSCC subspaces
  Projector gamma_perp;            // I - gamma
  std::vector<Mat> fixed_points;   // independent Hermitian solutions of E(g) = g
};

/// Fixed points of a block-diagonal-preserving E on C^n (x) C^d, searched over
/// Hermitian block-diagonal operators, and the span of their supports.
BsccProjectors bscc_direct_sum(const SuperOp& e, std::size_t n, std::size_t d);

/// S2M(Delta(X Phi)) at s: sum_{t in Sat(Phi)} s2m(Q(s,t)).
Mat delta_next(const QmcModel& m, std::size_t s, const std::vector<bool>& sat_phi);

struct UntilMatrices {
  Mat m2;  // n d^2 square, F_guard o P_perp in block form
  Mat m3;  // diagonal identity blocks at target states
  BsccProjectors bscc;
  std::vector<bool> guard;
  std::vector<bool> target;
};

UntilMatrices build_M2_M3(const QmcModel& m, const std::vector<bool>& sat1, const std::vector<bool>& sat2);

/// S2M of Delta(Phi1 U<=k Phi2) (or of U when k is empty) at state s.
Mat delta_until(const QmcModel& m, std::size_t s, const UntilMatrices& um, std::optional<unsigned long> k);
Mat delta_until(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1, const std::vector<bool>& sat2,
                std::optional<unsigned long> k);

/// Kraus form of tr_C(P_Phi2 o (F o P_{Phi1 & !Phi2})^i o P_s) on C^d; the
/// measure of paths first reaching Phi2 at step i.
SuperOp until_step_measure(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1,
                           const std::vector<bool>& sat2, unsigned long i);

}  // namespace qfid
