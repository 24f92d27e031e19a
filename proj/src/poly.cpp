#include "qfid/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qfid/error.hpp"

namespace qfid {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rational& constant) {
  if (constant != 0) c_.push_back(constant);
}

UPoly UPoly::monomial(const Rational& c, std::size_t degree) {
  if (c == 0) return {};
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  UPoly r = *this;
  Rational lc = leading();
  for (auto& c : r.c_) c /= lc;
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
  const Rational& lb = b.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational q = rem[k + b.c_.size() - 1] / lb;
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
  }
  rem.resize(b.c_.size() - 1);
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return UPoly::divmod(a, b).second; }
UPoly operator/(const UPoly& a, const UPoly& b) { return UPoly::divmod(a, b).first; }

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << qfid::to_string(mag);
      continue;
    }
    if (mag != 1) out << qfid::to_string(mag) << "*";
    out << var;
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace {

int sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  int changes = 0;
  int prev = 0;
  for (const auto& p : seq) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw ArithmeticError("root count of the zero polynomial");
  if (p.eval(lo) == 0 || p.eval(hi) == 0) throw ArithmeticError("root count with a root at an interval endpoint");
  if (lo >= hi) return 0;
  auto seq = sturm_sequence(squarefree_part(p));
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

Rational root_bound(const UPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(i) / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx};
}

RatInterval eval_interval(const UPoly& p, const RatInterval& x) {
  RatInterval acc{0, 0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RatInterval{*it, *it};
  return acc;
}

}  // namespace qfid
