#pragma once

// Reduction of a minimum-fidelity comparison to a quantified polynomial
// sentence over the reals, and its SMT-LIB2 (QF_NRA) rendering.

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qfid/exactnum.hpp"
#include "qfid/logic.hpp"
#include "qfid/matrix.hpp"

namespace qfid {

/// Exponent vector, one entry per variable of the owning polynomial.
using Monomial = std::vector<unsigned>;

/// Sparse multivariate polynomial with rational coefficients.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  /// Degree in the variables with index < `limit`.
  unsigned degree_in_prefix(std::size_t limit) const;
  Rational coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  double eval(const std::vector<double>& x) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

enum class Quantifier { Exists, Forall };
/// Strict or non-strict comparison of the polynomial against the bound.
enum class Rel { Lt, Le, Ge, Gt };

const char* to_string(Rel r);

/// Q x: purity(x) /\ constants(z) [/\ or ->] p(x, z) rel bound.
///
/// Variables are mu_1..mu_d, nu_1..nu_d (the real and imaginary parts of the
/// pure state amplitudes) followed by one z_j per irrational coefficient.
struct PolySentence {
  Quantifier quantifier = Quantifier::Exists;
  std::size_t d = 0;
  std::vector<std::string> vars;
  MPoly comparison;
  Rel rel = Rel::Le;
  Rational bound;  // tau^2
  std::vector<AlgebraicConstantEncoding> constants;
  std::vector<double> constant_values;

  std::size_t num_vars() const { return vars.size(); }
  /// Comparison polynomial at a pure state (constants substituted by their values).
  double eval_at(const std::vector<std::complex<double>>& psi) const;
};

/// Builds the sentence for Fid(E) cmp tau from M = S2M(E). Only <, <=, >=, >
/// are encoded directly; = and != are combinations the caller assembles.
/// Throws EncodingError if M is not d^2 x d^2 or if the imaginary part of the
/// comparison polynomial does not cancel.
PolySentence encode(const Mat& m, Cmp cmp, const Rational& tau);

struct EmitOptions {
  /// Replace x^2 by a fresh non-negative variable whenever x only occurs with
  /// even exponents. Equisatisfiable, and much easier for NRA solvers.
  bool even_power_rewrite = true;
  /// Pin the global phase by nu_1 = 0 and mu_1 >= 0. Every term pairs x with
  /// conj(x), so the comparison polynomial and the purity constraint are
  /// invariant under x -> e^{i phi} x and the sentence is unchanged.
  bool fix_global_phase = true;
};

/// SMT-LIB2 script in QF_NRA ending with (check-sat). Universal sentences are
/// emitted as the existential search for a counterexample, so `sat` refutes them.
std::string emit_smt(const PolySentence& s, const EmitOptions& opts = {});

/// SMT-LIB2 spelling of a rational: `3`, `(- 3)`, `(/ 1 2)`, `(- (/ 1 2))`.
std::string smt_rational(const Rational& q);

}  // namespace qfid
