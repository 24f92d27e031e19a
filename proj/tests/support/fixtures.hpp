#pragma once

// Test-side fixtures and oracles. Everything here is built independently of the
// parser and the closed-form synthesis so it can serve as ground truth.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qfid/checker.hpp"
#include "qfid/model.hpp"

namespace qfid::test {

/// Q(sqrt 2) with sqrt 2 in (1, 2).
FieldPtr sqrt2_field();
/// sqrt 2 as a field element.
RealScalar sqrt2();

/// Single-qubit kets |1>, |2>, |+>, |-> in Q(sqrt 2).
Mat k1();
Mat k2();
Mat kplus();
Mat kminus();
/// |a,b> = |a> (x) |b>.
Mat ket2(const Mat& a, const Mat& b);
Mat I2();
Mat X();
Mat Z();

/// The six-state IPv4 protocol chain assembled from kets and Pauli matrices.
QmcModel ipv4_fixture();

/// Directory holding the shipped model files.
std::string models_dir();

/// Random rational matrix with entries p/q, |p| <= range, 1 <= q <= 3.
Mat random_rational(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range = 3,
                    bool complex_entries = false);
/// B^dagger B for a random square B, optionally scaled to unit trace.
Mat random_psd(std::mt19937_64& rng, std::size_t d, bool complex_entries = false, bool unit_trace = true);
Mat random_hermitian(std::mt19937_64& rng, std::size_t d, bool complex_entries = false);
/// Orthogonal (real) or unitary (Gaussian rational) matrix via the Cayley transform.
Mat random_unitary(std::mt19937_64& rng, std::size_t d, bool complex_entries = false);
/// Rational point on the unit sphere in R^k.
std::vector<Rational> random_sphere_point(std::mt19937_64& rng, std::size_t k);
/// Random trace-preserving Kraus list on C^d with `count` operators (count >= 1).
std::vector<Mat> random_channel_kraus(std::mt19937_64& rng, std::size_t d, std::size_t count,
                                      bool complex_entries = false);

/// Random complete model with rational entries, labels drawn from {a, b};
/// some states are absorbing so fixed points appear inside guards.
QmcModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t d);

std::vector<bool> random_subset(std::mt19937_64& rng, std::size_t n);

/// sum_{i=0}^{k} S2M(tr_C o P_target o (F o P_guard)^i o embed_s), with
/// guard = sat1 & !sat2, by propagating full-space S2M matrices step by step.
Mat naive_until(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1, const std::vector<bool>& sat2,
                unsigned long k);

/// Real part of the trace, for trace comparisons on Hermitian operators.
RealScalar real_trace(const Mat& g);

}  // namespace qfid::test
