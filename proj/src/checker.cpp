#include "qfid/checker.hpp"

#include "qfid/error.hpp"

namespace qfid {

Truth truth_not(Truth a) {
  if (a == Truth::Unknown) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}

Truth truth_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

const char* to_string(Truth t) {
  switch (t) {
    case Truth::True:
      return "true";
    case Truth::False:
      return "false";
    case Truth::Unknown:
      return "unknown";
  }
  return "?";
}

bool SatSet::definite() const {
  for (auto t : truth)
    if (t == Truth::Unknown) return false;
  return true;
}

std::vector<bool> SatSet::members() const {
  if (!definite()) throw SolverError("satisfaction set depends on an undecided fidelity subformula");
  std::vector<bool> v(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) v[i] = truth[i] == Truth::True;
  return v;
}

SatSet sat(const QmcModel& m, const StateFormula& f, const FidelityDecider& decider) {
  SatSet r;
  r.truth.assign(m.n(), Truth::False);
  switch (f.kind) {
    case StateFormula::Kind::True:
      r.truth.assign(m.n(), Truth::True);
      break;
    case StateFormula::Kind::Atom:
      for (std::size_t s = 0; s < m.n(); ++s)
        if (m.has_label(s, f.atom)) r.truth[s] = Truth::True;
      break;
    case StateFormula::Kind::Not: {
      SatSet a = sat(m, *f.lhs, decider);
      for (std::size_t s = 0; s < m.n(); ++s) r.truth[s] = truth_not(a.truth[s]);
      break;
    }
    case StateFormula::Kind::And: {
      SatSet a = sat(m, *f.lhs, decider);
      SatSet b = sat(m, *f.rhs, decider);
      for (std::size_t s = 0; s < m.n(); ++s) r.truth[s] = truth_and(a.truth[s], b.truth[s]);
      break;
    }
    case StateFormula::Kind::Fidelity:
      if (!decider) throw SolverError("fidelity subformula without a decider");
      for (std::size_t s = 0; s < m.n(); ++s) r.truth[s] = decider(s, f);
      break;
  }
  return r;
}

Mat guard_projector(const QmcModel& m, const std::vector<bool>& set) {
  Mat p(m.n() * m.d, m.n() * m.d);
  for (std::size_t s = 0; s < m.n(); ++s)
    if (set.at(s))
      for (std::size_t a = 0; a < m.d; ++a) p(s * m.d + a, s * m.d + a) = 1;
  return p;
}

SuperOp restricted_F(const QmcModel& m, const std::vector<bool>& guard) {
  // Kraus operators |t><s| (x) E survive the projection exactly when s is in the guard.
  const std::size_t n = m.n();
  SuperOp f(n * m.d, n * m.d);
  for (const auto& [key, op] : m.q) {
    if (!guard.at(key.first)) continue;
    Mat ts = Mat::unit(n, key.second, key.first);
    for (const auto& e : op.kraus()) f.add(kron(ts, e));
  }
  return f;
}

namespace {

// Real parameters of a Hermitian d x d block: diagonal entries, then real and
// imaginary parts of each strictly upper entry.
struct HermParam {
  std::size_t a, b;
  bool imag;
};

std::vector<HermParam> herm_params(std::size_t d) {
  std::vector<HermParam> ps;
  for (std::size_t a = 0; a < d; ++a) ps.push_back({a, a, false});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      ps.push_back({a, b, false});
      ps.push_back({a, b, true});
    }
  return ps;
}

}  // namespace

BsccProjectors bscc_direct_sum(const SuperOp& e, std::size_t n, std::size_t d) {
  const std::size_t nd = n * d;
  if (e.in_dim() != nd || e.out_dim() != nd) throw DimensionError("bscc_direct_sum: dimension mismatch");
  const auto ps = herm_params(d);
  const std::size_t per = ps.size();  // d^2
  const FieldScalar iu = FieldScalar::imaginary_unit();

  auto basis = [&](std::size_t s, const HermParam& p) {
    Mat h(nd, nd);
    std::size_t r = s * d + p.a, c = s * d + p.b;
    if (p.a == p.b) {
      h(r, r) = 1;
    } else if (!p.imag) {
      h(r, c) = 1;
      h(c, r) = 1;
    } else {
      h(r, c) = iu;
      h(c, r) = -iu;
    }
    return h;
  };

  // Column k holds the real coordinates of E(H_k) - H_k on the diagonal blocks.
  Mat sys(n * per, n * per);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < per; ++k) {
      Mat h = basis(s, ps[k]);
      Mat r = apply(e, h) - h;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t q = 0; q < per; ++q) {
          const FieldScalar& x = r(t * d + ps[q].a, t * d + ps[q].b);
          sys(t * per + q, s * per + k) = ps[q].imag ? FieldScalar(x.im()) : FieldScalar(x.re());
        }
    }
  }

  BsccProjectors out;
  Mat null = nullspace(sys);
  Projector acc{Mat(nd, nd)};
  for (std::size_t c = 0; c < null.cols(); ++c) {
    Mat g(nd, nd);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t k = 0; k < per; ++k) {
        const FieldScalar& coef = null(s * per + k, c);
        if (!coef.is_zero()) g += basis(s, ps[k]) * coef;
      }
    acc = span_union_projector(acc, support_projector(g));
    out.fixed_points.push_back(std::move(g));
  }
  out.gamma_perp = {acc.complement()};
  out.gamma = std::move(acc);
  return out;
}

Mat delta_next(const QmcModel& m, std::size_t s, const std::vector<bool>& sat_phi) {
  Mat r(m.d * m.d, m.d * m.d);
  for (std::size_t t = 0; t < m.n(); ++t)
    if (sat_phi.at(t) && m.has_transition(s, t)) r += s2m(m.q.at({s, t}));
  return r;
}

UntilMatrices build_M2_M3(const QmcModel& m, const std::vector<bool>& sat1, const std::vector<bool>& sat2) {
  const std::size_t n = m.n(), d = m.d, d2 = d * d;
  UntilMatrices um;
  um.target = sat2;
  um.guard.resize(n);
  for (std::size_t s = 0; s < n; ++s) um.guard[s] = sat1.at(s) && !sat2.at(s);
  um.bscc = bscc_direct_sum(restricted_F(m, um.guard), n, d);

  um.m2 = Mat(n * d2, n * d2);
  for (const auto& [key, op] : m.q) {
    auto [i, j] = key;
    if (!um.guard[i]) continue;
    Mat p_i = cq_block(um.bscc.gamma_perp.p, d, i);
    Mat blk(d2, d2);
    for (const auto& e : op.kraus()) {
      Mat ep = e * p_i;
      blk += kron(ep, ep.conj());
    }
    um.m2.set_block(j * d2, i * d2, um.m2.block(j * d2, i * d2, d2, d2) + blk);
  }

  um.m3 = Mat(n * d2, n * d2);
  for (std::size_t s = 0; s < n; ++s)
    if (sat2[s])
      for (std::size_t a = 0; a < d2; ++a) um.m3(s * d2 + a, s * d2 + a) = 1;
  return um;
}

Mat delta_until(const QmcModel& m, std::size_t s, const UntilMatrices& um, std::optional<unsigned long> k) {
  const std::size_t n = m.n(), d2 = m.d * m.d;
  Mat start = kron(Mat::ket(n, s), Mat::identity(d2));
  Mat x = solve(Mat::identity(n * d2) - um.m2, start);
  if (k) x = x - power(um.m2, *k + 1) * x;
  Mat y = um.m3 * x;
  Mat r(d2, d2);
  for (std::size_t i = 0; i < n; ++i)
    if (um.target[i]) r += y.block(i * d2, 0, d2, d2);
  return r;
}

Mat delta_until(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1, const std::vector<bool>& sat2,
                std::optional<unsigned long> k) {
  if (k && *k == 0) {
    // Only the empty prefix counts: identity at a target state, zero elsewhere.
    return sat2.at(s) ? Mat::identity(m.d * m.d) : Mat(m.d * m.d, m.d * m.d);
  }
  return delta_until(m, s, build_M2_M3(m, sat1, sat2), k);
}

SuperOp until_step_measure(const QmcModel& m, std::size_t s, const std::vector<bool>& sat1,
                           const std::vector<bool>& sat2, unsigned long i) {
  std::vector<bool> guard(m.n());
  for (std::size_t t = 0; t < m.n(); ++t) guard[t] = sat1.at(t) && !sat2.at(t);
  SuperOp fg = restricted_F(m, guard);
  SuperOp acc = embed_state(m.n(), m.d, s);
  for (unsigned long step = 0; step < i; ++step) acc = compose(fg, acc);
  acc = compose(projection(guard_projector(m, sat2)), acc);
  return partial_trace_classical(acc, m.d);
}

}  // namespace qfid
