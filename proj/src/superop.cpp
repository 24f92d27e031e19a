#include "qfid/superop.hpp"

#include <string>

#include "qfid/error.hpp"

namespace qfid {

SuperOp::SuperOp(std::size_t in_dim, std::size_t out_dim, std::vector<Mat> kraus) : in_(in_dim), out_(out_dim) {
  for (auto& k : kraus) add(std::move(k));
}

SuperOp SuperOp::from_kraus(std::size_t d, std::vector<Mat> kraus) { return SuperOp(d, d, std::move(kraus)); }

SuperOp SuperOp::identity(std::size_t d) { return SuperOp(d, d, {Mat::identity(d)}); }

std::size_t SuperOp::dim() const {
  if (in_ != out_) throw DimensionError("super-operator is not square");
  return in_;
}

void SuperOp::add(Mat e) {
  if (e.rows() != out_ || e.cols() != in_)
    throw DimensionError("Kraus operator is " + std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                         ", expected " + std::to_string(out_) + "x" + std::to_string(in_));
  if (e.is_zero()) return;
  kraus_.push_back(std::move(e));
}

Mat apply(const SuperOp& e, const Mat& g) {
  if (g.rows() != e.in_dim() || g.cols() != e.in_dim()) throw DimensionError("apply: operand dimension mismatch");
  Mat r(e.out_dim(), e.out_dim());
  for (const auto& k : e.kraus()) r += k * g * k.adjoint();
  return r;
}

SuperOp compose(const SuperOp& e2, const SuperOp& e1) {
  if (e2.in_dim() != e1.out_dim()) throw DimensionError("compose: dimension mismatch");
  SuperOp r(e1.in_dim(), e2.out_dim());
  for (const auto& a : e2.kraus())
    for (const auto& b : e1.kraus()) r.add(a * b);
  return r;
}

SuperOp sum(const SuperOp& e1, const SuperOp& e2) {
  if (e1.in_dim() != e2.in_dim() || e1.out_dim() != e2.out_dim()) throw DimensionError("sum: dimension mismatch");
  SuperOp r = e1;
  for (const auto& k : e2.kraus()) r.add(k);
  return r;
}

SuperOp tensor(const SuperOp& e1, const SuperOp& e2) {
  SuperOp r(e1.in_dim() * e2.in_dim(), e1.out_dim() * e2.out_dim());
  for (const auto& a : e1.kraus())
    for (const auto& b : e2.kraus()) r.add(kron(a, b));
  return r;
}

SuperOp scale_kraus(const SuperOp& e, const FieldScalar& c) {
  SuperOp r(e.in_dim(), e.out_dim());
  for (const auto& k : e.kraus()) r.add(k * c);
  return r;
}

Mat s2m(const SuperOp& e) {
  Mat m(e.out_dim() * e.out_dim(), e.in_dim() * e.in_dim());
  for (const auto& k : e.kraus()) m += kron(k, k.conj());
  return m;
}

Mat l2v(const Mat& g) {
  Mat v(g.rows() * g.cols(), 1);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) v(i * g.cols() + j, 0) = g(i, j);
  return v;
}

Mat v2l(const Mat& v) {
  if (v.cols() != 1) throw DimensionError("v2l expects a column vector");
  std::size_t d = 0;
  while (d * d < v.rows()) ++d;
  if (d * d != v.rows()) throw DimensionError("v2l: length " + std::to_string(v.rows()) + " is not a perfect square");
  Mat g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = v(i * d + j, 0);
  return g;
}

SuperOp partial_trace_classical(const SuperOp& e, std::size_t d) {
  if (d == 0 || e.out_dim() % d != 0)
    throw DimensionError("partial trace: output dimension " + std::to_string(e.out_dim()) + " not divisible by " +
                         std::to_string(d));
  const std::size_t n = e.out_dim() / d;
  SuperOp r(e.in_dim(), d);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& k : e.kraus()) r.add(k.block(s * d, 0, d, k.cols()));
  return r;
}

SuperOp embed_state(std::size_t n, std::size_t d, std::size_t s) {
  return SuperOp(d, n * d, {kron(Mat::ket(n, s), Mat::identity(d))});
}

SuperOp projection(const Mat& p) { return SuperOp(p.rows(), p.rows(), {p}); }

bool superop_equiv(const SuperOp& e1, const SuperOp& e2) {
  if (e1.in_dim() != e2.in_dim() || e1.out_dim() != e2.out_dim()) return false;
  return s2m(e1) == s2m(e2);
}

std::size_t Projector::rank() const { return qfid::rank(p); }

Projector range_projector(const Mat& b) {
  Mat basis = column_space_basis(b);
  if (basis.cols() == 0) return {Mat(b.rows(), b.rows())};
  Mat bh = basis.adjoint();
  return {basis * solve(bh * basis, bh)};
}

Projector support_projector(const Mat& g) {
  if (!g.is_square()) throw DimensionError("support of a non-square matrix");
  return range_projector(g);
}

Projector span_union_projector(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim()) throw DimensionError("span union: dimension mismatch");
  Mat both(p.dim(), 2 * p.dim());
  both.set_block(0, 0, p.p);
  both.set_block(0, p.dim(), q.p);
  return range_projector(both);
}

}  // namespace qfid
