#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "qfid/error.hpp"
#include "qfid/exactnum.hpp"

using namespace qfid;
using qfid::test::sqrt2;
using qfid::test::sqrt2_field;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

UPoly poly(std::initializer_list<long> low_to_high) {
  std::vector<Rational> c;
  for (long v : low_to_high) c.push_back(Rational(v));
  return UPoly(c);
}

RealScalar eval_in_field(const UPoly& f, const RealScalar& a) {
  RealScalar acc;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * a + RealScalar(*it);
  return acc;
}

RealScalar random_element(std::mt19937_64& rng, const FieldPtr& field) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> c;
  for (int j = 0; j < field->degree(); ++j) c.push_back(q(num(rng), den(rng)));
  return RealScalar(field, c);
}

}  // namespace

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("3351/5000") == q(3351, 5000));
  CHECK(parse_rational("0.6703") == q(6703, 10000));
  CHECK(parse_rational("-4/6") == q(-2, 3));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), ArithmeticError);
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("polynomial gcd, squarefree part and Sturm counts") {
  UPoly p = poly({-2, 0, 1});  // z^2 - 2
  CHECK(count_real_roots(p, -2, 2) == 2);
  CHECK(count_real_roots(p, 1, 2) == 1);
  CHECK(count_real_roots(p, 0, 1) == 0);
  UPoly sq = p * p * poly({1, 1});
  CHECK(squarefree_part(sq) == p * poly({1, 1}));
  CHECK(gcd(p * poly({-3, 1}), poly({-3, 1}) * poly({5, 1})) == poly({-3, 1}));
  CHECK_THROWS_AS(count_real_roots(poly({-1, 1}), 1, 2), ArithmeticError);
  CHECK(p.to_string() == "z^2 - 2");
}

TEST_CASE("field declarations are validated") {
  CHECK_NOTHROW(NumberField::make(poly({-2, 0, 1}), 1, 2));
  CHECK_THROWS_AS(NumberField::make(poly({-2, 0, 1}), -2, 2), ArithmeticError);  // two roots
  CHECK_THROWS_AS(NumberField::make(poly({-1, 0, 1}), 0, 2), ArithmeticError);   // rational root
  CHECK_THROWS_AS(NumberField::make(poly({-4, 0, 1}), 1, 2), ArithmeticError);   // root at endpoint
  CHECK_THROWS_AS(NumberField::make(poly({4, 0, -4, 0, 1}), 1, 2), ArithmeticError);  // (z^2-2)^2
  // A non-monic declaration is normalised.
  auto f = NumberField::make(poly({-4, 0, 2}), 1, 2);
  CHECK(f->minpoly() == poly({-2, 0, 1}));
  CHECK(std::abs(f->approx() - std::sqrt(2.0)) < 1e-15);
  CHECK(f->declaration() == "field minpoly z^2 - 2 in (1,2)");
}

TEST_CASE("degree one field is plain Q") {
  auto f = NumberField::make(UPoly({q(-1, 2), q(1)}), 0, 1);
  RealScalar t = RealScalar::generator(f);
  CHECK(t.is_rational());
  CHECK(t.rational_value() == q(1, 2));
}

TEST_CASE("arithmetic in Q(sqrt 2)") {
  RealScalar t = sqrt2();
  CHECK(t * t == RealScalar(2));
  RealScalar half = t / RealScalar(2);
  CHECK(half * half == RealScalar(q(1, 2)));
  // 12 sqrt2/25 * 48 sqrt2/125 = 1152/3125
  RealScalar a = RealScalar(q(12, 25)) * t, b = RealScalar(q(48, 125)) * t;
  RealScalar p = a * b;
  CHECK(p == RealScalar(q(1152, 3125)));
  CHECK(std::abs(to_double(a) * to_double(b) - 1152.0 / 3125.0) < 1e-12);
  CHECK((RealScalar(1) + t).inverse() == t - RealScalar(1));
  CHECK_THROWS_AS(t / RealScalar(), ArithmeticError);
  CHECK_THROWS_AS(FieldScalar(t) / FieldScalar(), ArithmeticError);
  CHECK((RealScalar(3) - RealScalar(2) * t).to_string() == "-2*t + 3");
}

TEST_CASE("sign_of") {
  RealScalar t = sqrt2();
  CHECK(sign_of(RealScalar()) == 0);
  CHECK(sign_of(t - RealScalar(1)) == 1);
  CHECK(sign_of(RealScalar(3) - RealScalar(2) * t) == 1);
  CHECK(sign_of(RealScalar(2) * t - RealScalar(3)) == -1);
  // 99/70 is a close convergent of sqrt 2 from above.
  CHECK(sign_of(RealScalar(q(99, 70)) - t) == 1);
  CHECK(sign_of(RealScalar(q(140, 99)) - t) == -1);
}

TEST_CASE("sign_of agrees with float evaluation on random elements") {
  std::mt19937_64 rng(11);
  auto cubic = NumberField::make(poly({-2, 0, 0, 1}), 1, 2);  // cube root of 2
  for (const FieldPtr& f : {sqrt2_field(), cubic}) {
    RatInterval iv = f->isolate(Rational(1, 1000000000));
    for (int k = 0; k < 500; ++k) {
      RealScalar a = random_element(rng, f);
      if (a.is_zero()) continue;
      RatInterval v = eval_interval(a.as_poly(), iv);
      double lo = v.lo.get_d(), hi = v.hi.get_d();
      int expected = lo > 0 ? 1 : (hi < 0 ? -1 : 0);
      if (expected == 0) continue;  // float interval too wide to decide
      CHECK(sign_of(a) == expected);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  auto cubic = NumberField::make(poly({-2, 0, 0, 1}), 1, 2);
  for (const FieldPtr& f : {sqrt2_field(), cubic}) {
    for (int k = 0; k < 100; ++k) {
      RealScalar a = random_element(rng, f), b = random_element(rng, f), c = random_element(rng, f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      FieldScalar x(a, b), y(c, a);
      FieldScalar z(b, c);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      if (!y.is_zero()) CHECK((x / y) * y == x);
      CHECK(x.conj().conj() == x);
      CHECK((x * y).conj() == x.conj() * y.conj());
      if (!x.is_zero()) CHECK(sign_of(x.norm2()) == 1);
    }
  }
}

TEST_CASE("complex scalars") {
  FieldScalar i = FieldScalar::imaginary_unit();
  CHECK(i * i == FieldScalar(-1));
  FieldScalar z(RealScalar(3), RealScalar(4));
  CHECK(z.norm2() == RealScalar(25));
  CHECK(z * z.conj() == FieldScalar(25));
  CHECK(z.to_string() == "3 + 4*i");
  CHECK(FieldScalar(RealScalar(), RealScalar(-1)).to_string() == "-i");
  CHECK(FieldScalar(RealScalar(1), RealScalar(sqrt2())).to_string() == "1 + (t)*i");
}

TEST_CASE("minimal polynomials") {
  RealScalar t = sqrt2();
  CHECK(minimal_polynomial(RealScalar(q(1, 2))) == UPoly({q(-1, 2), q(1)}));
  CHECK(minimal_polynomial(t / RealScalar(2)) == UPoly({q(-1, 2), q(0), q(1)}));
  CHECK(minimal_polynomial(RealScalar(1) + t) == poly({-1, -2, 1}));
  auto cubic = NumberField::make(poly({-2, 0, 0, 1}), 1, 2);
  RealScalar c = RealScalar::generator(cubic);
  CHECK(minimal_polynomial(c * c) == poly({-4, 0, 0, 1}));
}

TEST_CASE("encode_constant examples") {
  RealScalar t = sqrt2();
  auto e1 = encode_constant(RealScalar(q(1, 2)), "z1");
  CHECK(e1.minpoly == UPoly({q(-1, 2), q(1)}));
  CHECK(e1.lo == 0);
  CHECK(e1.hi == 1);
  auto e2 = encode_constant(t / RealScalar(2), "z2");
  CHECK(e2.minpoly == UPoly({q(-1, 2), q(0), q(1)}));
  CHECK(e2.lo == 0);
  CHECK(e2.hi == 1);
  auto e3 = encode_constant(RealScalar(1) + t, "z3");
  CHECK(e3.minpoly == poly({-1, -2, 1}));
  CHECK(e3.lo == 2);
  CHECK(e3.hi == 3);
  CHECK(e3.name == "z3");
}

TEST_CASE("encode_constant isolates the value on random elements") {
  std::mt19937_64 rng(3);
  auto cubic = NumberField::make(poly({-2, 0, 0, 1}), 1, 2);
  for (const FieldPtr& f : {sqrt2_field(), cubic}) {
    for (int k = 0; k < 40; ++k) {
      RealScalar a = random_element(rng, f);
      auto enc = encode_constant(a, "z");
      CHECK(eval_in_field(enc.minpoly, a).is_zero());
      CHECK(count_real_roots(enc.minpoly, enc.lo, enc.hi) == 1);
      CHECK(sign_of(a - RealScalar(enc.lo)) == 1);
      CHECK(sign_of(RealScalar(enc.hi) - a) == 1);
    }
  }
}
