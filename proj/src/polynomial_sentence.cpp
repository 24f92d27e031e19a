#include "qfid/polynomial_sentence.hpp"

#include <cmath>
#include <sstream>

#include "qfid/error.hpp"

namespace qfid {

unsigned MPoly::total_degree() const { return degree_in_prefix(nvars_); }

unsigned MPoly::degree_in_prefix(std::size_t limit) const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned deg = 0;
    for (std::size_t v = 0; v < limit && v < m.size(); ++v) deg += m[v];
    best = std::max(best, deg);
  }
  return best;
}

Rational MPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw DimensionError("monomial arity does not match the polynomial");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

double MPoly::eval(const std::vector<double>& x) const {
  if (x.size() != nvars_) throw DimensionError("point arity does not match the polynomial");
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t v = 0; v < nvars_; ++v)
      for (unsigned e = 0; e < m[v]; ++e) t *= x[v];
    acc += t;
  }
  return acc;
}

const char* to_string(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

double PolySentence::eval_at(const std::vector<std::complex<double>>& psi) const {
  if (psi.size() != d) throw DimensionError("state dimension does not match the sentence");
  std::vector<double> x(num_vars());
  for (std::size_t a = 0; a < d; ++a) {
    x[a] = psi[a].real();
    x[d + a] = psi[a].imag();
  }
  for (std::size_t j = 0; j < constant_values.size(); ++j) x[2 * d + j] = constant_values[j];
  return comparison.eval(x);
}

namespace {

// i^k for k mod 4.
FieldScalar i_power(unsigned k) {
  switch (k % 4) {
    case 0: return FieldScalar(1);
    case 1: return FieldScalar::imaginary_unit();
    case 2: return FieldScalar(-1);
    default: return -FieldScalar::imaginary_unit();
  }
}

}  // namespace

PolySentence encode(const Mat& m, Cmp cmp, const Rational& tau) {
  if (m.rows() != m.cols()) throw EncodingError("SOVM matrix must be square");
  std::size_t d = 0;
  while (d * d < m.rows()) ++d;
  if (d * d != m.rows() || d == 0) throw EncodingError("SOVM matrix size is not a square d^2");
  if (sgn(tau) < 0 || tau > 1) throw EncodingError("threshold must lie in [0, 1]");

  PolySentence s;
  s.d = d;
  s.bound = tau * tau;
  switch (cmp) {
    case Cmp::Le: s.quantifier = Quantifier::Exists; s.rel = Rel::Le; break;
    case Cmp::Lt: s.quantifier = Quantifier::Exists; s.rel = Rel::Lt; break;
    case Cmp::Ge: s.quantifier = Quantifier::Forall; s.rel = Rel::Ge; break;
    case Cmp::Gt: s.quantifier = Quantifier::Forall; s.rel = Rel::Gt; break;
    default: throw EncodingError("= and != are decided as combinations of <= and >=");
  }

  // conj(x_i) x_j M[(i,j),(k,l)] x_k conj(x_l), x_a = mu_a + i nu_a.
  const std::size_t nx = 2 * d;
  std::map<Monomial, FieldScalar> acc;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const FieldScalar& entry = m(r, c);
      if (entry.is_zero()) continue;
      const std::size_t idx[4] = {r / d, r % d, c / d, c % d};
      const bool conjugated[4] = {true, false, false, true};
      for (unsigned mask = 0; mask < 16; ++mask) {
        Monomial mono(nx, 0);
        unsigned ipow = 0;
        for (int f = 0; f < 4; ++f) {
          if (mask & (1u << f)) {
            ++mono[d + idx[f]];
            ipow += conjugated[f] ? 3 : 1;
          } else {
            ++mono[idx[f]];
          }
        }
        auto [it, inserted] = acc.emplace(mono, entry * i_power(ipow));
        if (!inserted) it->second += entry * i_power(ipow);
      }
    }
  }

  std::vector<RealScalar> irrational;
  std::vector<std::pair<Monomial, std::size_t>> z_terms;
  std::map<Monomial, Rational> rational_terms;
  for (const auto& [mono, coeff] : acc) {
    if (!coeff.im().is_zero())
      throw EncodingError("imaginary part of the comparison polynomial does not cancel (coefficient " +
                          coeff.to_string() + ")");
    const RealScalar& re = coeff.re();
    if (re.is_zero()) continue;
    if (re.is_rational()) {
      rational_terms[mono] = re.rational_value();
      continue;
    }
    std::size_t j = 0;
    while (j < irrational.size() && !(irrational[j] == re)) ++j;
    if (j == irrational.size()) irrational.push_back(re);
    z_terms.emplace_back(mono, j);
  }

  const std::size_t e = irrational.size();
  for (std::size_t a = 0; a < d; ++a) s.vars.push_back("mu" + std::to_string(a + 1));
  for (std::size_t a = 0; a < d; ++a) s.vars.push_back("nu" + std::to_string(a + 1));
  for (std::size_t j = 0; j < e; ++j) {
    std::string name = "z" + std::to_string(j + 1);
    s.vars.push_back(name);
    s.constants.push_back(encode_constant(irrational[j], name));
    s.constant_values.push_back(to_double(irrational[j]));
  }
  s.comparison = MPoly(nx + e);
  for (const auto& [mono, q] : rational_terms) {
    Monomial full = mono;
    full.resize(nx + e, 0);
    s.comparison.add_term(full, q);
  }
  for (const auto& [mono, j] : z_terms) {
    Monomial full = mono;
    full.resize(nx + e, 0);
    full[nx + j] = 1;
    s.comparison.add_term(full, Rational(1));
  }
  return s;
}

std::string smt_rational(const Rational& q) {
  Rational a = abs(q);
  std::string body = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return sgn(q) < 0 ? "(- " + body + ")" : body;
}

namespace {

std::string render_sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string render_product(const Rational& c, const std::vector<std::string>& factors) {
  std::vector<std::string> parts;
  if (c != 1 || factors.empty()) parts.push_back(smt_rational(c));
  parts.insert(parts.end(), factors.begin(), factors.end());
  if (parts.size() == 1) return parts[0];
  std::string out = "(*";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

}  // namespace

std::string emit_smt(const PolySentence& s, const EmitOptions& opts) {
  const std::size_t nx = 2 * s.d;
  const std::size_t nv = s.num_vars();

  // nu_1 is substituted by 0: terms mentioning it vanish.
  std::vector<bool> dropped(nv, false);
  if (opts.fix_global_phase && s.d > 0) dropped[s.d] = true;
  MPoly p(nv);
  for (const auto& [m, c] : s.comparison.terms()) {
    bool keep = true;
    for (std::size_t v = 0; v < nv; ++v) keep = keep && !(dropped[v] && m[v] > 0);
    if (keep) p.add_term(m, c);
  }

  // A state variable that only ever appears squared is replaced by its square.
  std::vector<bool> squared(nv, false);
  if (opts.even_power_rewrite) {
    for (std::size_t v = 0; v < nx; ++v) {
      bool even = !dropped[v];
      for (const auto& [m, c] : p.terms()) even = even && m[v] % 2 == 0;
      squared[v] = even;
    }
  }
  std::vector<std::string> names(nv);
  for (std::size_t v = 0; v < nv; ++v) names[v] = squared[v] ? s.vars[v] + "_p2" : s.vars[v];

  auto monomial_factors = [&](const Monomial& m) {
    std::vector<std::string> f;
    for (std::size_t v = 0; v < nv; ++v) {
      unsigned e = squared[v] ? m[v] / 2 : m[v];
      for (unsigned k = 0; k < e; ++k) f.push_back(names[v]);
    }
    return f;
  };

  std::ostringstream out;
  out << "; " << (s.quantifier == Quantifier::Exists ? "exists" : "forall") << " state with p " << to_string(s.rel)
      << " " << s.bound.get_str() << "\n";
  if (opts.fix_global_phase) out << "; global phase fixed: nu1 = 0, mu1 >= 0\n";
  if (s.quantifier == Quantifier::Forall) out << "; universal sentence: sat means a counterexample exists\n";
  out << "(set-logic QF_NRA)\n";
  for (std::size_t v = 0; v < nv; ++v)
    if (!dropped[v]) out << "(declare-fun " << names[v] << " () Real)\n";
  for (std::size_t v = 0; v < nv; ++v)
    if (squared[v] || (opts.fix_global_phase && v == 0)) out << "(assert (>= " << names[v] << " 0))\n";

  std::vector<std::string> purity;
  for (std::size_t v = 0; v < nx; ++v) {
    if (dropped[v]) continue;
    if (squared[v])
      purity.push_back(names[v]);
    else
      purity.push_back("(* " + names[v] + " " + names[v] + ")");
  }
  out << "(assert (= " << render_sum(purity) << " 1))\n";

  for (std::size_t j = 0; j < s.constants.size(); ++j) {
    const auto& enc = s.constants[j];
    const std::string& z = names[nx + j];
    std::vector<std::string> terms;
    const auto& cs = enc.minpoly.coeffs();
    for (std::size_t k = cs.size(); k-- > 0;) {
      if (sgn(cs[k]) == 0) continue;
      terms.push_back(render_product(cs[k], std::vector<std::string>(k, z)));
    }
    out << "(assert (= " << render_sum(terms) << " 0))\n";
    out << "(assert (< " << smt_rational(enc.lo) << " " << z << "))\n";
    out << "(assert (< " << z << " " << smt_rational(enc.hi) << "))\n";
  }

  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) terms.push_back(render_product(c, monomial_factors(m)));
  Rel rel = s.rel;
  if (s.quantifier == Quantifier::Forall) rel = rel == Rel::Ge ? Rel::Lt : Rel::Le;
  out << "(assert (" << to_string(rel) << " " << render_sum(terms) << " " << smt_rational(s.bound) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace qfid
