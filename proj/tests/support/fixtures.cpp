#include "fixtures.hpp"

#include "qfid/error.hpp"

#ifndef QFID_MODELS_DIR
#define QFID_MODELS_DIR "models"
#endif

namespace qfid::test {

FieldPtr sqrt2_field() {
  static const FieldPtr f = NumberField::make(UPoly({Rational(-2), Rational(0), Rational(1)}), 1, 2);
  return f;
}

RealScalar sqrt2() { return RealScalar::generator(sqrt2_field()); }

Mat k1() { return Mat::ket(2, 0); }
Mat k2() { return Mat::ket(2, 1); }
Mat kplus() { return (k1() + k2()) * FieldScalar(sqrt2() / RealScalar(2)); }
Mat kminus() { return (k1() - k2()) * FieldScalar(sqrt2() / RealScalar(2)); }
Mat ket2(const Mat& a, const Mat& b) { return kron(a, b); }
Mat I2() { return Mat::identity(2); }
Mat X() { return Mat::from_rows({{0, 1}, {1, 0}}); }
Mat Z() { return Mat::from_rows({{1, 0}, {0, -1}}); }

QmcModel ipv4_fixture() {
  QmcModel m;
  m.field = sqrt2_field();
  m.d = 4;
  m.states = {"s0", "s1", "s2", "s3", "s4", "s5"};
  m.labels.assign(6, {});
  m.labels[5].insert("ok");
  m.labels[4].insert("error");
  auto r = [](long p, long q) { return FieldScalar(Rational(p, q)); };
  auto put = [&](std::size_t s, std::size_t t, std::vector<Mat> ks) { m.q[{s, t}] = SuperOp::from_kraus(4, ks); };
  const Mat k11 = ket2(k1(), k1()), k12 = ket2(k1(), k2()), k1p = ket2(k1(), kplus()), k1m = ket2(k1(), kminus());
  const Mat p2 = outer(k2(), k2());
  put(0, 1, {outer(k1p, k11), r(4, 5) * outer(k1m, k12)});
  put(0, 5, {r(3, 5) * outer(k12, k12), kron(p2, I2())});
  put(1, 0, {outer(k11, k1p), r(4, 5) * outer(k12, k1m)});
  put(1, 2, {r(3, 5) * outer(k12, k1m), kron(p2, I2())});
  put(2, 0, {r(12, 25) * kron(X(), I2()), r(9, 25) * kron(X(), X())});
  put(2, 3, {r(16, 25) * kron(I2(), I2()), r(12, 25) * kron(I2(), X())});
  put(3, 0, {r(12, 25) * kron(I2(), Z()), r(12, 25) * kron(Z(), I2())});
  put(3, 4, {r(16, 25) * kron(I2(), I2()), r(9, 25) * kron(Z(), Z())});
  put(4, 4, {Mat::identity(4)});
  put(5, 5, {Mat::identity(4)});
  return m;
}

std::string models_dir() { return QFID_MODELS_DIR; }

Mat random_rational(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, bool complex_entries) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Rational re(num(rng), den(rng));
      re.canonicalize();
      Rational im;
      if (complex_entries) {
        im = Rational(num(rng), den(rng));
        im.canonicalize();
      }
      m(i, j) = FieldScalar(RealScalar(re), RealScalar(im));
    }
  return m;
}

RealScalar real_trace(const Mat& g) { return g.trace().re(); }

Mat random_psd(std::mt19937_64& rng, std::size_t d, bool complex_entries, bool unit_trace) {
  while (true) {
    Mat b = random_rational(rng, d, d, 3, complex_entries);
    Mat g = b.adjoint() * b;
    RealScalar tr = real_trace(g);
    if (tr.is_zero()) continue;
    if (unit_trace) g = g * FieldScalar(RealScalar(1) / tr);
    return g;
  }
}

Mat random_hermitian(std::mt19937_64& rng, std::size_t d, bool complex_entries) {
  Mat b = random_rational(rng, d, d, 3, complex_entries);
  return b + b.adjoint();
}

Mat random_unitary(std::mt19937_64& rng, std::size_t d, bool complex_entries) {
  // Cayley transform of a skew-Hermitian A: (I - A)(I + A)^-1 is unitary.
  std::uniform_int_distribution<int> e(-2, 2);
  Mat a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if (i == j) {
        if (complex_entries) a(i, i) = FieldScalar(RealScalar(0), RealScalar(e(rng)));
        continue;
      }
      FieldScalar x(RealScalar(e(rng)), complex_entries ? RealScalar(e(rng)) : RealScalar());
      a(i, j) = x;
      a(j, i) = -x.conj();
    }
  Mat id = Mat::identity(d);
  return (id - a) * inverse(id + a);
}

std::vector<Rational> random_sphere_point(std::mt19937_64& rng, std::size_t k) {
  // Inverse stereographic projection of a random rational point of R^{k-1}.
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  if (k == 1) return {Rational(1)};
  std::vector<Rational> y(k - 1);
  Rational s;
  for (auto& v : y) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
    s += v * v;
  }
  std::vector<Rational> p;
  for (const auto& v : y) p.push_back(Rational(2 * v / (1 + s)));
  p.push_back(Rational((1 - s) / (1 + s)));
  return p;
}

std::vector<Mat> random_channel_kraus(std::mt19937_64& rng, std::size_t d, std::size_t count, bool complex_entries) {
  // Weighted unitaries c_l U_l; when count allows, one slot is split by a
  // diagonal projector into U P and U' (I - P) to make the channel non-unital.
  std::vector<Mat> out;
  std::size_t slots = count >= 2 ? count - 1 : 1;
  auto weights = random_sphere_point(rng, slots);
  for (std::size_t l = 0; l < slots; ++l) {
    Mat u = random_unitary(rng, d, complex_entries) * FieldScalar(weights[l]);
    if (l == 0 && count >= 2) {
      Mat p(d, d), q = Mat::identity(d);
      std::bernoulli_distribution coin(0.5);
      for (std::size_t i = 0; i < d; ++i)
        if (coin(rng)) {
          p(i, i) = 1;
          q(i, i) = 0;
        }
      out.push_back(u * p);
      out.push_back(random_unitary(rng, d, complex_entries) * FieldScalar(weights[l]) * q);
    } else {
      out.push_back(u);
    }
  }
  return out;
}

QmcModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  QmcModel m;
  m.d = d;
  m.labels.assign(n, {});
  std::bernoulli_distribution coin(0.5), rare(0.25);
  std::uniform_int_distribution<std::size_t> target(0, n - 1), count(1, 3);
  for (std::size_t s = 0; s < n; ++s) {
    m.states.push_back("s" + std::to_string(s));
    if (coin(rng)) m.labels[s].insert("a");
    if (rare(rng)) m.labels[s].insert("b");
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (rare(rng)) {
      m.q[{s, s}] = SuperOp::identity(d);
      continue;
    }
    for (auto& e : random_channel_kraus(rng, d, count(rng))) {
      auto key = std::make_pair(s, target(rng));
      auto it = m.q.try_emplace(key, SuperOp::zero(d)).first;
      it->second.add(std::move(e));
    }
  }
  if (!validate(m).ok()) throw Error("random_model produced an incomplete model");
  return m;
}

std::vector<bool> random_subset(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = coin(rng);
  return v;
}

Mat naive_until(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1, const std::vector<bool>& sat2,
                unsigned long k) {
  const std::size_t n = m.n(), d = m.d;
  std::vector<bool> guard(n);
  for (std::size_t t = 0; t < n; ++t) guard[t] = sat1[t] && !sat2[t];
  // F o P_guard built directly from its definition.
  SuperOp f = compose(combined_F(m), projection(guard_projector(m, guard)));
  Mat step = s2m(f);
  Mat finish = s2m(compose(partial_trace_classical(SuperOp::identity(n * d), d), projection(guard_projector(m, sat2))));
  Mat v = s2m(embed_state(n, d, s));
  Mat acc(d * d, d * d);
  for (unsigned long i = 0; i <= k; ++i) {
    acc += finish * v;
    if (i < k) v = step * v;
  }
  return acc;
}

}  // namespace qfid::test
