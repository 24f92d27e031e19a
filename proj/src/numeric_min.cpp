#include "qfid/numeric_min.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qfid/error.hpp"

namespace qfid {

namespace {

using CVec = std::vector<std::complex<double>>;

std::size_t side(const CMatrix& m) {
  std::size_t d = 0;
  while (d * d < m.size()) ++d;
  if (d * d != m.size()) throw DimensionError("SOVM matrix size is not a square d^2");
  return d;
}

double norm(const CVec& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void normalize(CVec& v) {
  double n = norm(v);
  for (auto& x : v) x /= n;
}

CVec vec_rho(const CVec& psi) {
  const std::size_t d = psi.size();
  CVec out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i * d + j] = psi[i] * std::conj(psi[j]);
  return out;
}

// Euclidean gradient on R^{2d}, packed as g_mu + i g_nu.
CVec gradient(const CMatrix& m, const CVec& psi) {
  const std::size_t d = psi.size(), n = d * d;
  CVec r = vec_rho(psi), g(n, 0.0);
  // G = E(rho) + E^dagger(rho); the adjoint map has matrix M^dagger.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g[a] += m[a][b] * r[b] + std::conj(m[b][a]) * r[b];
  CVec out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += g[i * d + j] * psi[j];
  for (auto& x : out) x *= 2.0;
  return out;
}

double descend(const CMatrix& m, CVec& psi, int iterations) {
  double f = fidelity_objective(m, psi);
  double step = 0.5;
  for (int it = 0; it < iterations; ++it) {
    CVec g = gradient(m, psi);
    // Tangent projection: remove the radial component Re<psi, g>.
    double radial = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) radial += std::real(std::conj(psi[i]) * g[i]);
    for (std::size_t i = 0; i < psi.size(); ++i) g[i] -= radial * psi[i];
    double gn2 = 0;
    for (const auto& x : g) gn2 += std::norm(x);
    if (gn2 < 1e-26) break;
    bool moved = false;
    for (int bt = 0; bt < 50; ++bt) {
      CVec trial(psi.size());
      for (std::size_t i = 0; i < psi.size(); ++i) trial[i] = psi[i] - step * g[i];
      normalize(trial);
      double ft = fidelity_objective(m, trial);
      if (ft <= f - 1e-4 * step * gn2) {
        psi = trial;
        f = ft;
        moved = true;
        step = std::min(step * 2, 4.0);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return f;
}

}  // namespace

CMatrix to_complex(const Mat& m) {
  CMatrix out(m.rows(), std::vector<std::complex<double>>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = {to_double(m(r, c).re()), to_double(m(r, c).im())};
  return out;
}

double fidelity_objective(const CMatrix& m, const std::vector<std::complex<double>>& psi) {
  CVec r = vec_rho(psi);
  std::complex<double> acc = 0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    std::complex<double> row = 0;
    for (std::size_t b = 0; b < r.size(); ++b) row += m[a][b] * r[b];
    acc += std::conj(r[a]) * row;
  }
  return acc.real();
}

NumericResult numeric_min(const Mat& mat, const NumericOptions& opts) {
  CMatrix m = to_complex(mat);
  const std::size_t d = side(m);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  NumericResult best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](CVec psi) {
    normalize(psi);
    double f = descend(m, psi, opts.iterations);
    if (f < best.value) {
      best.value = f;
      best.psi = psi;
    }
  };
  for (std::size_t i = 0; i < d; ++i) {
    CVec e(d, 0.0);
    e[i] = 1;
    consider(e);
  }
  for (int k = 0; k < opts.restarts; ++k) {
    CVec psi(d);
    for (auto& x : psi) x = {gauss(rng), gauss(rng)};
    consider(psi);
  }
  best.fidelity = std::sqrt(std::max(0.0, best.value));
  return best;
}

}  // namespace qfid
