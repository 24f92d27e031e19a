#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "qfid/error.hpp"
#include "qfid/superop.hpp"

using namespace qfid;
using namespace qfid::test;

namespace {

FieldScalar r(long p, long q = 1) { return FieldScalar(Rational(p, q)); }

// Exact PSD certificate: g == C^dagger C for the stacked factor C.
bool has_factor_form(const Mat& g, const std::vector<Mat>& factors) {
  Mat acc(g.rows(), g.cols());
  for (const auto& c : factors) acc += c.adjoint() * c;
  return acc == g;
}

SuperOp random_superop(std::mt19937_64& rng, std::size_t d, std::size_t count, bool complex_entries) {
  std::vector<Mat> ks;
  for (std::size_t k = 0; k < count; ++k) ks.push_back(random_rational(rng, d, d, 2, complex_entries));
  return SuperOp::from_kraus(d, ks);
}

}  // namespace

TEST_CASE("matrix basics") {
  std::mt19937_64 rng(1);
  Mat a = random_rational(rng, 3, 2, 3, true);
  CHECK(a.adjoint().adjoint() == a);
  CHECK_THROWS_AS(a.trace(), DimensionError);
  CHECK_THROWS_AS(a * a, DimensionError);
  Mat b = random_rational(rng, 2, 2);
  Mat k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k(1 * 2 + 1, 0 * 2 + 1) == a(1, 0) * b(1, 1));
  CHECK(Mat::identity(3).trace() == r(3));
}

TEST_CASE("exact elimination") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    Mat a = random_rational(rng, 4, 4, 3, it % 2 == 1);
    if (!is_invertible(a)) continue;
    CHECK(a * inverse(a) == Mat::identity(4));
    Mat b = random_rational(rng, 4, 2);
    CHECK(a * solve(a, b) == b);
    CHECK(power(a, 5) == a * a * a * a * a);
    CHECK(power(a, 0) == Mat::identity(4));
  }
  Mat s = Mat::from_rows({{1, 2}, {2, 4}});
  CHECK(rank(s) == 1);
  CHECK_FALSE(is_invertible(s));
  CHECK_THROWS_AS(inverse(s), ArithmeticError);
  Mat ns = nullspace(s);
  CHECK(ns.cols() == 1);
  CHECK((s * ns).is_zero());
}

TEST_CASE("apply examples") {
  std::mt19937_64 rng(3);
  Mat g = random_rational(rng, 2, 2, 3, true);
  CHECK(apply(SuperOp::identity(2), g) == g);
  CHECK(apply(SuperOp::from_kraus(2, {X()}), outer(k1(), k1())) == outer(k2(), k2()));
  QmcModel m = ipv4_fixture();
  Mat p11 = outer(ket2(k1(), k1()), ket2(k1(), k1()));
  CHECK(apply(m.q.at({3, 4}), p11) == p11 * r(337, 625));
  CHECK_THROWS_AS(apply(SuperOp::identity(2), Mat::identity(3)), DimensionError);
  CHECK(apply(SuperOp::zero(2), g).is_zero());
}

TEST_CASE("compose, sum and tensor") {
  QmcModel m = ipv4_fixture();
  const Mat k11 = ket2(k1(), k1()), k12 = ket2(k1(), k2());
  FieldScalar t(sqrt2());
  SuperOp expected = SuperOp::from_kraus(
      4, {outer(ket2(k1(), kplus()), k11) * (r(12, 25) * t), outer(ket2(k1(), kminus()), k12) * (r(48, 125) * t)});
  SuperOp c = compose(m.q.at({0, 1}), m.q.at({3, 0}));
  CHECK(c.kraus().size() == 4);
  CHECK(superop_equiv(c, expected));
  SuperOp e = m.q.at({2, 0});
  CHECK(superop_equiv(compose(e, SuperOp::identity(4)), e));
  CHECK(superop_equiv(compose(SuperOp::identity(4), e), e));
  CHECK(sum(e, SuperOp::zero(4)).kraus().size() == e.kraus().size());
  CHECK_THROWS_AS(compose(e, SuperOp::identity(2)), DimensionError);
}

TEST_CASE("s2m examples") {
  CHECK(s2m(SuperOp::identity(2)) == Mat::identity(4));
  SuperOp flip = SuperOp::from_kraus(2, {X()});
  Mat m = s2m(flip);
  CHECK(m == kron(X(), X()));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Mat g = Mat::unit(2, i, j);
      CHECK(v2l(m * l2v(g)) == apply(flip, g));
    }
  CHECK(s2m(SuperOp::zero(3)).is_zero());
}

TEST_CASE("l2v and v2l") {
  Mat v = l2v(Mat::unit(2, 0, 1));
  CHECK(v == Mat::ket(4, 1));
  std::mt19937_64 rng(4);
  for (int it = 0; it < 100; ++it) {
    std::size_t d = 1 + it % 4;
    Mat g = random_rational(rng, d, d, 3, true);
    CHECK(v2l(l2v(g)) == g);
  }
  CHECK_THROWS_AS(v2l(Mat(5, 1)), DimensionError);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 1 + it % 4;
    SuperOp e = random_superop(rng, d, 1 + it % 3, true);
    Mat g = random_rational(rng, d, d, 3, true);
    CHECK(l2v(apply(e, g)) == s2m(e) * l2v(g));
  }
}

TEST_CASE("s2m is a monoid homomorphism") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 1 + it % 4;
    SuperOp e1 = random_superop(rng, d, 1 + it % 3, it % 2 == 0);
    SuperOp e2 = random_superop(rng, d, 1 + (it + 1) % 3, it % 3 == 0);
    CHECK(s2m(compose(e2, e1)) == s2m(e2) * s2m(e1));
  }
}

TEST_CASE("apply preserves Hermiticity and positivity") {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 1 + it % 4;
    bool cplx = it % 2 == 0;
    SuperOp e = random_superop(rng, d, 1 + it % 3, cplx);
    Mat h = random_hermitian(rng, d, cplx);
    Mat eh = apply(e, h);
    CHECK(eh == eh.adjoint());
    Mat b = random_rational(rng, d, d, 3, cplx);
    Mat out = apply(e, b.adjoint() * b);
    std::vector<Mat> factors;
    for (const auto& k : e.kraus()) factors.push_back(b * k.adjoint());
    CHECK(has_factor_form(out, factors));
  }
}

TEST_CASE("tensor law") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 15; ++it) {
    std::size_t d1 = 1 + it % 2, d2 = 1 + (it / 2) % 3;
    SuperOp e1 = random_superop(rng, d1, 1 + it % 2, true);
    SuperOp e2 = random_superop(rng, d2, 1 + (it + 1) % 2, false);
    Mat g1 = random_rational(rng, d1, d1, 2, true), g2 = random_rational(rng, d2, d2, 2);
    CHECK(apply(tensor(e1, e2), kron(g1, g2)) == kron(apply(e1, g1), apply(e2, g2)));
  }
}

TEST_CASE("partial trace over the classical register") {
  std::mt19937_64 rng(8);
  Mat a = random_rational(rng, 2, 2);
  const std::size_t n = 3, d = 2;
  SuperOp e(n * d, n * d, {kron(Mat::unit(n, 2, 1), a)});
  SuperOp tr = partial_trace_classical(e, d);
  CHECK(tr.kraus().size() == 1);
  CHECK(superop_equiv(tr, SuperOp(n * d, d, {kron(Mat::bra(n, 1), a)})));
  // On a block-diagonal operator it sums the blocks that reach each target.
  Mat rho = cq_state({random_psd(rng, d), random_psd(rng, d), random_psd(rng, d)});
  CHECK(apply(tr, rho) == apply(SuperOp::from_kraus(d, {a}), cq_block(rho, d, 1)));
  CHECK_THROWS_AS(partial_trace_classical(e, 4), DimensionError);
}

TEST_CASE("support projectors") {
  CHECK(support_projector(Mat(3, 3)).p.is_zero());
  std::mt19937_64 rng(9);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 2 + it % 5;
    std::size_t rk = 1 + it % 3;
    if (rk > d) rk = d;
    bool cplx = it % 2 == 1;
    Mat g(d, d);
    for (std::size_t k = 0; k < rk; ++k) {
      Mat v = random_rational(rng, d, 1, 3, cplx);
      g += v * v.adjoint();
    }
    Projector p = support_projector(g);
    CHECK(p.p * g == g);
    CHECK(p.rank() == rank(g));
    CHECK(p.p * p.p == p.p);
    CHECK(p.p.adjoint() == p.p);
  }
}

TEST_CASE("span union") {
  Projector p1{outer(k1(), k1())}, p2{outer(k2(), k2())}, pp{outer(kplus(), kplus())};
  Projector zero{Mat(2, 2)};
  CHECK(span_union_projector(p1, zero).p == p1.p);
  CHECK(span_union_projector(p1, p2).p == Mat::identity(2));
  CHECK(span_union_projector(p1, pp).p == Mat::identity(2));
  CHECK(span_union_projector(pp, pp).p == pp.p);
}

TEST_CASE("superop equivalence") {
  std::mt19937_64 rng(10);
  Mat a = random_rational(rng, 2, 2, 3, true);
  CHECK(superop_equiv(SuperOp::from_kraus(2, {a, -a}), SuperOp::from_kraus(2, {a, a})));
  CHECK_FALSE(superop_equiv(SuperOp::identity(2), SuperOp::from_kraus(2, {X()})));
  // {A, A} equals {sqrt2 A}.
  CHECK(superop_equiv(SuperOp::from_kraus(2, {a, a}), SuperOp::from_kraus(2, {a * FieldScalar(sqrt2())})));
}
