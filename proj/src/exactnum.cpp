#include "qfid/exactnum.hpp"

#include <cmath>

#include "qfid/error.hpp"

namespace qfid {

// ---------------------------------------------------------------- NumberField

namespace {

// Rational roots of p by the rational root test on the integer-normalised
// polynomial. Only divisors up to 10^6 are enumerated; larger constant or
// leading terms are skipped (the interval root count still guards the field).
bool has_small_rational_root(const UPoly& p) {
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> a;
  for (const auto& c : p.coeffs()) a.push_back(Integer(c * den_lcm));
  std::size_t low = 0;
  while (low < a.size() && a[low] == 0) ++low;
  if (low > 0) return true;  // zero is a root
  Integer a0 = abs(a.front());
  Integer an = abs(a.back());
  const Integer limit = 1000000;
  if (a0 > limit * limit || an > limit * limit) return false;
  auto divisors = [&](const Integer& n) {
    std::vector<Integer> ds;
    for (Integer k = 1; k * k <= n && k <= limit; ++k) {
      if (n % k == 0) {
        ds.push_back(k);
        if (k * k != n) ds.push_back(n / k);
      }
    }
    return ds;
  };
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int s : {1, -1}) {
        Rational r(num * s, den);
        r.canonicalize();
        if (p.eval(r) == 0) return true;
      }
  return false;
}

}  // namespace

NumberField::NumberField(UPoly minpoly, Rational lo, Rational hi)
    : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  RatInterval iv = isolate(Rational(1, Integer(1) << 80));
  approx_ = to_double(Rational((iv.lo + iv.hi) / 2));
}

FieldPtr NumberField::make(const UPoly& minpoly, const Rational& lo, const Rational& hi) {
  if (minpoly.degree() < 1) throw ArithmeticError("field minimal polynomial must have degree >= 1");
  UPoly f = minpoly.monic();
  if (gcd(f, f.derivative()).degree() > 0) throw ArithmeticError("field minimal polynomial is not squarefree");
  if (lo >= hi) throw ArithmeticError("empty isolation interval");
  if (f.eval(lo) == 0 || f.eval(hi) == 0) throw ArithmeticError("isolation interval endpoint is a root");
  if (count_real_roots(f, lo, hi) != 1)
    throw ArithmeticError("isolation interval must contain exactly one real root of " + f.to_string());
  if (f.degree() > 1 && has_small_rational_root(f))
    throw ArithmeticError("field minimal polynomial " + f.to_string() + " has a rational root");
  return FieldPtr(new NumberField(std::move(f), lo, hi));
}

RatInterval NumberField::isolate(const Rational& width) const {
  Rational lo = lo_, hi = hi_;
  int slo = sgn(minpoly_.eval(lo));
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int sm = sgn(minpoly_.eval(mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

double NumberField::approx() const { return approx_; }

std::string NumberField::declaration() const {
  return "field minpoly " + minpoly_.to_string("z") + " in (" + to_string(lo_) + "," + to_string(hi_) + ")";
}

// ----------------------------------------------------------------- RealScalar

RealScalar::RealScalar(const Rational& q) {
  if (q != 0) c_.push_back(q);
}

RealScalar::RealScalar(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  reduce();
}

RealScalar RealScalar::generator(const FieldPtr& field) {
  if (!field) throw ArithmeticError("the rational field has no primitive element");
  return RealScalar(field, {Rational(0), Rational(1)});
}

void RealScalar::reduce() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (field_ && c_.size() > static_cast<std::size_t>(field_->degree())) {
    c_ = (UPoly(std::move(c_)) % field_->minpoly()).coeffs();
  }
  if (c_.size() <= 1) field_.reset();
}

FieldPtr RealScalar::common_field(const RealScalar& a, const RealScalar& b) {
  if (!a.field_) return b.field_;
  if (!b.field_ || a.field_ == b.field_ || *a.field_ == *b.field_) return a.field_;
  throw ArithmeticError("scalars from different number fields");
}

Rational RealScalar::rational_value() const {
  if (!is_rational()) throw ArithmeticError("value " + to_string() + " is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

RealScalar RealScalar::operator-() const {
  RealScalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

RealScalar& RealScalar::operator+=(const RealScalar& o) {
  if (o.c_.empty()) return *this;
  field_ = common_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  reduce();
  return *this;
}

RealScalar& RealScalar::operator-=(const RealScalar& o) {
  if (o.c_.empty()) return *this;
  field_ = common_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  reduce();
  return *this;
}

RealScalar& RealScalar::operator*=(const RealScalar& o) {
  if (c_.empty()) return *this;
  if (o.c_.empty()) {
    c_.clear();
    field_.reset();
    return *this;
  }
  if (o.c_.size() == 1) {
    for (auto& c : c_) c *= o.c_[0];
    return *this;
  }
  if (c_.size() == 1) {
    Rational s = c_[0];
    c_ = o.c_;
    field_ = o.field_;
    for (auto& c : c_) c *= s;
    return *this;
  }
  field_ = common_field(*this, o);
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  reduce();
  return *this;
}

RealScalar RealScalar::inverse() const {
  if (c_.empty()) throw ArithmeticError("division by zero");
  if (c_.size() == 1) return RealScalar(Rational(1 / c_[0]));
  // Extended Euclid: find s with s*a + t*f = 1.
  UPoly r0 = field_->minpoly(), r1 = as_poly();
  UPoly s0, s1 = Rational(1);
  while (!r1.is_zero()) {
    auto [q, r] = UPoly::divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw ArithmeticError("minimal polynomial " + field_->minpoly().to_string() + " is reducible");
  Rational lc = r0.leading();
  std::vector<Rational> coeffs = s0.coeffs();
  for (auto& c : coeffs) c /= lc;
  return RealScalar(field_, std::move(coeffs));
}

RealScalar& RealScalar::operator/=(const RealScalar& o) {
  if (o.c_.empty()) throw ArithmeticError("division by zero");
  if (o.c_.size() == 1) {
    for (auto& c : c_) c /= o.c_[0];
    return *this;
  }
  return *this *= o.inverse();
}

std::string RealScalar::to_string() const { return as_poly().to_string("t"); }

int sign_of(const RealScalar& a) {
  if (a.is_rational()) return sgn(a.rational_value());
  const NumberField& f = *a.field();
  UPoly p = a.as_poly();
  Rational lo = f.lo(), hi = f.hi();
  int slo = sgn(f.minpoly().eval(lo));
  while (true) {
    RatInterval v = eval_interval(p, {lo, hi});
    if (!v.contains_zero()) return sgn(v.lo);
    Rational mid = (lo + hi) / 2;
    int sm = sgn(f.minpoly().eval(mid));
    if (sm == 0) return sgn(p.eval(mid));
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double to_double(const RealScalar& a) {
  if (a.is_rational()) return to_double(a.rational_value());
  long double t = a.field()->approx();
  long double acc = 0;
  const auto& c = a.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + static_cast<long double>(it->get_d());
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------- FieldScalar

RealScalar FieldScalar::norm2() const { return re_ * re_ + im_ * im_; }

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    *this = FieldScalar();
    return *this;
  }
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  RealScalar re = re_ * o.re_ - im_ * o.im_;
  RealScalar im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  RealScalar n = o.norm2();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string FieldScalar::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string im;
  if (im_.is_rational()) {
    Rational q = im_.rational_value();
    if (q == 1) {
      im = "i";
    } else if (q == -1) {
      im = "-i";
    } else {
      im = qfid::to_string(q) + "*i";
    }
  } else {
    im = "(" + im_.to_string() + ")*i";
  }
  if (re_.is_zero()) return im;
  if (im.front() == '-') return re_.to_string() + " - " + im.substr(1);
  return re_.to_string() + " + " + im;
}

// ----------------------------------------------------- algebraic constants

UPoly minimal_polynomial(const RealScalar& a) {
  if (a.is_rational()) return UPoly({-a.rational_value(), Rational(1)});
  const FieldPtr& field = a.field();
  const std::size_t n = static_cast<std::size_t>(field->degree());
  // Column j of the multiplication matrix holds the coefficients of a * theta^j.
  std::vector<std::vector<Rational>> mul(n, std::vector<Rational>(n));
  RealScalar basis = RealScalar(1);
  RealScalar theta = RealScalar::generator(field);
  for (std::size_t j = 0; j < n; ++j) {
    RealScalar col = a * basis;
    for (std::size_t i = 0; i < col.coeffs().size(); ++i) mul[i][j] = col.coeffs()[i];
    basis *= theta;
  }
  // Faddeev-LeVerrier.
  std::vector<Rational> charpoly(n + 1);
  charpoly[n] = 1;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s;
        for (std::size_t l = 0; l < n; ++l) s += mul[i][l] * m[l][j];
        next[i][j] = s;
      }
      next[i][i] += charpoly[n - k + 1];
    }
    Rational tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += mul[i][l] * next[l][i];
    charpoly[n - k] = -tr / static_cast<unsigned long>(k);
    m = std::move(next);
  }
  return squarefree_part(UPoly(std::move(charpoly)));
}

AlgebraicConstantEncoding encode_constant(const RealScalar& a, const std::string& name) {
  UPoly f = minimal_polynomial(a);
  if (a.is_rational()) {
    Rational q = a.rational_value();
    Rational lo = floor_rational(q);
    Rational hi = lo + 1;
    if (lo == q) {
      lo = q - 1;
      hi = q + 1;
    }
    return {name, f, lo, hi};
  }
  // floor(a): start from a double estimate and correct with exact signs.
  Rational k = floor_rational(Rational(std::floor(to_double(a))));
  while (sign_of(a - RealScalar(k)) < 0) k -= 1;
  while (sign_of(a - RealScalar(k + 1)) >= 0) k += 1;
  Rational lo = k, hi = k + 1;
  while (f.eval(lo) == 0 || f.eval(hi) == 0 || count_real_roots(f, lo, hi) != 1) {
    Rational mid = (lo + hi) / 2;
    if (sign_of(a - RealScalar(mid)) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {name, f, lo, hi};
}

}  // namespace qfid
