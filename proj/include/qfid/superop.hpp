#pragma once

// Completely positive maps in Kraus form, their matrix representation and the
// support/span projectors used for BSCC removal.

#include <cstddef>
#include <vector>

#include "qfid/matrix.hpp"

namespace qfid {

/// E(g) = sum_l E_l g E_l^dagger. Kraus operators are out_dim x in_dim, which
/// lets the classical partial trace and the state embeddings live here too.
/// An empty Kraus list is the zero map.
class SuperOp {
 public:
  SuperOp() = default;
  SuperOp(std::size_t in_dim, std::size_t out_dim, std::vector<Mat> kraus = {});
  /// Square d x d Kraus list; d is taken from the first operator.
  static SuperOp from_kraus(std::size_t d, std::vector<Mat> kraus);
  static SuperOp identity(std::size_t d);
  static SuperOp zero(std::size_t d) { return SuperOp(d, d); }

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  /// Square dimension; throws when in_dim != out_dim.
  std::size_t dim() const;
  const std::vector<Mat>& kraus() const { return kraus_; }
  bool is_zero_list() const { return kraus_.empty(); }

  /// Appends one Kraus operator (zero operators are dropped).
  void add(Mat e);

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  std::vector<Mat> kraus_;
};

Mat apply(const SuperOp& e, const Mat& g);
/// e2 after e1.
SuperOp compose(const SuperOp& e2, const SuperOp& e1);
SuperOp sum(const SuperOp& e1, const SuperOp& e2);
SuperOp tensor(const SuperOp& e1, const SuperOp& e2);
/// The Kraus-list scaled by a real factor c; the map scales by c^2.
SuperOp scale_kraus(const SuperOp& e, const FieldScalar& c);

/// sum_l E_l (x) conj(E_l); size out^2 x in^2.
Mat s2m(const SuperOp& e);
/// Row-major vectorisation: entry (i, j) goes to index i*cols + j.
Mat l2v(const Mat& g);
/// Inverse of l2v for a square result; throws DimensionError if the length is not a square.
Mat v2l(const Mat& v);

/// Traces out the classical register of C^n (x) C^d: Kraus {(<s| (x) I) E_l}.
/// Zero products are dropped.
SuperOp partial_trace_classical(const SuperOp& e, std::size_t d);
/// {|s> (x) I_d}: embeds C^d into block s of C^n (x) C^d.
SuperOp embed_state(std::size_t n, std::size_t d, std::size_t s);
/// {P} for a projector P.
SuperOp projection(const Mat& p);

/// Equal matrix representations, hence the same map.
bool superop_equiv(const SuperOp& e1, const SuperOp& e2);

/// Orthogonal projector P = P^dagger = P^2.
struct Projector {
  Mat p;
  std::size_t dim() const { return p.rows(); }
  std::size_t rank() const;
  Mat complement() const { return Mat::identity(p.rows()) - p; }
};

/// Projector onto the column space of the columns of b (need not be independent).
Projector range_projector(const Mat& b);
/// Projector onto the column space of Hermitian g, computed as B (B^dagger B)^-1 B^dagger.
Projector support_projector(const Mat& g);
Projector span_union_projector(const Projector& p, const Projector& q);

}  // namespace qfid
