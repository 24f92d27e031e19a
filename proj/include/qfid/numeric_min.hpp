#pragma once

// Floating-point search for the minimum fidelity; an upper bound used to
// cross-check and annotate the exact verdicts, never to decide them.

#include <complex>
#include <cstdint>
#include <vector>

#include "qfid/matrix.hpp"

namespace qfid {

struct NumericOptions {
  int restarts = 24;
  int iterations = 400;
  std::uint64_t seed = 0x5eed;
};

struct NumericResult {
  double fidelity = 1;  // sqrt of `value`
  double value = 1;     // <psi| E(|psi><psi|) |psi>
  std::vector<std::complex<double>> psi;
};

using CMatrix = std::vector<std::vector<std::complex<double>>>;

CMatrix to_complex(const Mat& m);

/// <psi| E(|psi><psi|) |psi> with M = S2M(E) in row-major vectorisation.
double fidelity_objective(const CMatrix& m, const std::vector<std::complex<double>>& psi);

/// Projected gradient descent with Armijo backtracking on the unit sphere,
/// started from the basis vectors and `restarts` random points.
NumericResult numeric_min(const Mat& m, const NumericOptions& opts = {});

}  // namespace qfid
