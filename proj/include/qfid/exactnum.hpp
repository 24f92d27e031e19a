#pragma once

// Exact arithmetic in a simple real extension Q(theta) and its complexification
// Q(theta)(i). theta is pinned down by a minimal polynomial plus a rational
// isolation interval; every scalar in the checker lives in one such field.

#include <memory>
#include <string>
#include <vector>

#include "qfid/poly.hpp"
#include "qfid/rational.hpp"

namespace qfid {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q(theta) with theta the unique real root of `minpoly` in the open interval (lo, hi).
class NumberField {
 public:
  /// Validates the declaration: monic after normalisation, squarefree, no
  /// rational root when degree > 1, and exactly one real root in (lo, hi).
  /// Throws ArithmeticError otherwise.
  static FieldPtr make(const UPoly& minpoly, const Rational& lo, const Rational& hi);

  const UPoly& minpoly() const { return minpoly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int degree() const { return minpoly_.degree(); }

  /// An interval around theta of width at most `width`, obtained by bisection.
  RatInterval isolate(const Rational& width) const;

  /// theta as a double (bisected to 2^-80).
  double approx() const;

  /// `field minpoly <poly> in (<lo>,<hi>)` as accepted by the model parser.
  std::string declaration() const;

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.minpoly_ == b.minpoly_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  NumberField(UPoly minpoly, Rational lo, Rational hi);

  UPoly minpoly_;
  Rational lo_;
  Rational hi_;
  double approx_ = 0;
};

/// An element sum_j coeffs[j] * theta^j of Q(theta), canonically reduced
/// (degree below the field degree, no trailing zeros). Rational values never
/// carry a field pointer, so they combine freely with any field.
class RealScalar {
 public:
  RealScalar() = default;
  RealScalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  RealScalar(long v) : RealScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  RealScalar(int v) : RealScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  /// Builds and reduces sum coeffs[j] theta^j in `field`.
  RealScalar(FieldPtr field, std::vector<Rational> coeffs);

  /// The primitive element theta of `field`.
  static RealScalar generator(const FieldPtr& field);

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  /// Throws ArithmeticError if the value is irrational.
  Rational rational_value() const;
  const std::vector<Rational>& coeffs() const { return c_; }
  const FieldPtr& field() const { return field_; }

  RealScalar operator-() const;
  RealScalar& operator+=(const RealScalar& o);
  RealScalar& operator-=(const RealScalar& o);
  RealScalar& operator*=(const RealScalar& o);
  RealScalar& operator/=(const RealScalar& o);
  friend RealScalar operator+(RealScalar a, const RealScalar& b) { return a += b; }
  friend RealScalar operator-(RealScalar a, const RealScalar& b) { return a -= b; }
  friend RealScalar operator*(RealScalar a, const RealScalar& b) { return a *= b; }
  friend RealScalar operator/(RealScalar a, const RealScalar& b) { return a /= b; }
  friend bool operator==(const RealScalar& a, const RealScalar& b) { return a.c_ == b.c_; }

  RealScalar inverse() const;

  /// Expression text such as `3/2 - 1/2*t`, parseable by the model parser.
  std::string to_string() const;

  /// The value as a polynomial in theta.
  UPoly as_poly() const { return UPoly(c_); }

 private:
  static FieldPtr common_field(const RealScalar& a, const RealScalar& b);
  void reduce();

  FieldPtr field_;
  std::vector<Rational> c_;
};

/// Sign of the real number `a` represents. Irrational values are certified by
/// refining the isolation interval of theta until interval evaluation excludes 0.
int sign_of(const RealScalar& a);

double to_double(const RealScalar& a);

/// Complex number re + im*i with re, im in Q(theta).
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(RealScalar re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(RealScalar re, RealScalar im) : re_(std::move(re)), im_(std::move(im)) {}
  FieldScalar(const Rational& q) : re_(q) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)

  static FieldScalar imaginary_unit() { return {RealScalar(), RealScalar(1)}; }

  const RealScalar& re() const { return re_; }
  const RealScalar& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  FieldScalar conj() const { return {re_, -im_}; }
  /// |z|^2 = re^2 + im^2.
  RealScalar norm2() const;

  FieldScalar operator-() const { return {-re_, -im_}; }
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o);
  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// `a`, `b*i` or `a + (b)*i`; parseable by the model parser.
  std::string to_string() const;

 private:
  RealScalar re_;
  RealScalar im_;
};

/// Standard encoding of a real algebraic constant: the unique real root of
/// `minpoly` inside the open interval (lo, hi).
struct AlgebraicConstantEncoding {
  std::string name;
  UPoly minpoly;
  Rational lo;
  Rational hi;
};

/// Minimal polynomial over Q of the value of `a` (monic). Computed as the
/// squarefree part of the characteristic polynomial of multiplication by `a`.
UPoly minimal_polynomial(const RealScalar& a);

/// Minimal polynomial plus an isolation interval separating `a` from the other
/// real roots. Starts from (floor(a), floor(a)+1) and bisects as needed.
AlgebraicConstantEncoding encode_constant(const RealScalar& a, const std::string& name);

}  // namespace qfid
