#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfid/rational.hpp"

namespace qfid {

/// Dense univariate polynomial over the rationals, coefficients low to high.
/// Trailing zero coefficients are never stored, so the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  UPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static UPoly monomial(const Rational& c, std::size_t degree);
  static UPoly variable() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational eval(const Rational& x) const;
  UPoly derivative() const;
  UPoly monic() const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; throws ArithmeticError when dividing by zero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly operator%(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);

/// p / gcd(p, p'), made monic.
UPoly squarefree_part(const UPoly& p);

/// Canonical Sturm chain p, p', -rem(...), ...
std::vector<UPoly> sturm_sequence(const UPoly& p);

/// Number of distinct real roots in the open interval (lo, hi). Neither endpoint
/// may be a root of p.
int count_real_roots(const UPoly& p, const Rational& lo, const Rational& hi);

/// Every real root of p has absolute value strictly below the returned bound.
Rational root_bound(const UPoly& p);

/// Closed rational interval used for sign certification.
struct RatInterval {
  Rational lo;
  Rational hi;
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);

/// Horner evaluation of p over x in interval arithmetic.
RatInterval eval_interval(const UPoly& p, const RatInterval& x);

}  // namespace qfid
